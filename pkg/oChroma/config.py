import os
from dotenv import load_dotenv
from pathlib import Path

# Define the configuration directory paths
USER_CONFIG_DIR = os.path.join(str(Path.home()), '.config', 'ochroma')
USER_CONFIG_FILE = os.path.join(USER_CONFIG_DIR, '.env')
LOCAL_CONFIG_FILE = os.path.join(os.getcwd(), '.env')

# Try to load environment variables from the user config directory first,
# then fall back to the local directory
config_loaded = False

if os.path.exists(USER_CONFIG_FILE):
    load_dotenv(USER_CONFIG_FILE)
    config_loaded = True

if not config_loaded and os.path.exists(LOCAL_CONFIG_FILE):
    load_dotenv(LOCAL_CONFIG_FILE)
    config_loaded = True

# Otherwise, just try to load from any .env in the current directory
if not config_loaded:
    load_dotenv()

DEFAULT_MAX_WORKERS = 5
DEFAULT_LOG_LEVEL = 'WARNING'
DEFAULT_GOLDEN_DIR = os.path.join(
    os.path.dirname(os.path.dirname(os.path.abspath(__file__))), 'tests', 'golden'
)


def get_config_file_path():
    """
    Return the .env file oChroma reads its settings from.
    The user config directory wins when a file exists there.
    """
    if os.path.exists(USER_CONFIG_FILE):
        return USER_CONFIG_FILE
    return LOCAL_CONFIG_FILE


def get_max_workers():
    """
    Worker count used by orientation sweeps when --jobs is not given.

    Returns:
        int: OCHROMA_MAX_WORKERS, or 5 when unset or not a positive integer
    """
    value = os.getenv('OCHROMA_MAX_WORKERS')
    try:
        workers = int(value)
    except (TypeError, ValueError):
        return DEFAULT_MAX_WORKERS
    return workers if workers > 0 else DEFAULT_MAX_WORKERS


def get_log_level():
    """Logging level name taken from OCHROMA_LOG_LEVEL."""
    return os.getenv('OCHROMA_LOG_LEVEL', DEFAULT_LOG_LEVEL).upper()


def get_golden_dir():
    """Directory holding the golden report files used by the test suite."""
    return os.getenv('OCHROMA_GOLDEN_DIR') or DEFAULT_GOLDEN_DIR


def fallback_enabled():
    """
    Whether the colouring engine may fall back to exhaustive search.
    OCHROMA_ENGINE_FALLBACK=0 turns every fallback into an error.
    """
    return os.getenv('OCHROMA_ENGINE_FALLBACK', '1').strip() not in ('0', 'false', 'no')
