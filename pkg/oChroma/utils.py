"""
Utility functions for the oChroma application.
This module contains the formatting helpers shared by the reports.
"""

TEXT = 'text'
TSV = 'tsv'
FORMATS = (TEXT, TSV)


def format_value(value):
    """Format a report cell; None becomes "none"."""
    if value is None:
        return "none"
    if isinstance(value, bool):
        return "yes" if value else "no"
    return str(value)


def banner(title):
    return f"{'='*20} {title} {'='*20}"


def cycle_id(index):
    return f"C{index + 1}"


def decomposition_id(index):
    return f"D{index + 1}"


def format_edges(edges):
    return ','.join(str(e) for e in sorted(edges))


def format_bits(bits):
    return ''.join(str(b) for b in bits)


def format_participation(indices):
    """
    Decomposition ids a cycle takes part in.

    Args:
        indices (list): Decomposition indices

    Returns:
        str: Comma-separated ids such as "D1,D3", or "-" when unused
    """
    if not indices:
        return "-"
    return ','.join(decomposition_id(i) for i in indices)


def render_table(title, headers, rows, fmt=TEXT):
    """
    Render one titled table.

    Text tables get a banner and left-aligned columns two spaces apart with
    trailing blanks stripped. TSV tables get a "# title" line and tab-separated
    cells. Both end in a newline.

    Args:
        title (str): Table title
        headers (list): Column names
        rows (list): Rows of cells, formatted with format_value
        fmt (str): TEXT or TSV

    Returns:
        str: The rendered table
    """
    cells = [[format_value(c) for c in row] for row in rows]
    if fmt == TSV:
        lines = [f"# {title}", '\t'.join(headers)]
        lines.extend('\t'.join(row) for row in cells)
        return '\n'.join(lines) + '\n'

    widths = [len(h) for h in headers]
    for row in cells:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = [banner(title)]
    for row in [list(headers)] + cells:
        lines.append('  '.join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip())
    return '\n'.join(lines) + '\n'


def join_tables(tables):
    """Separate rendered tables with one blank line."""
    return '\n'.join(tables)
