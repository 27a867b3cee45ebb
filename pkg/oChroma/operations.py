"""
Workflows behind the oChroma subcommands.
This module loads inputs, runs the analyses and renders the reports.
"""

import concurrent.futures
import logging
import os
from collections import namedtuple
from threading import Lock

from oChroma import config
from oChroma.catalog_io import (
    builtin, builtin_cubic, builtin_names, cubic_names, parse_colouring, parse_orientation,
    parse_pd, parse_vog, write_colouring, write_vog,
)
from oChroma.colour_engine import o_colour
from oChroma.errors import InputError, OrientationError, UnknownNameError, ValidationError
from oChroma.ocycle import (
    chi_o, cycle_usage, enumerate_decompositions, enumerate_o_cycles, explain_o_colouring,
    is_o_colourable, min_colours, ocolouring_from_edge_colours, validate_o_colouring,
)
from oChroma.orientation import OrientationAssignment, assignment_count, enumerate_assignments
from oChroma.symmetry import burnside_count, map_automorphisms, orbits
from oChroma.tables import published, reproduces
from oChroma.transforms import perfect_matchings, tait_contract, tait_expand, three_edge_colourings
from oChroma.utils import (
    TEXT, cycle_id, decomposition_id, format_bits, format_edges, format_participation,
    join_tables, render_table,
)

logger = logging.getLogger(__name__)

Subject = namedtuple('Subject', ['name', 'graph', 'sigma', 'orientation_label'])
Analysis = namedtuple('Analysis', ['cycles', 'decompositions', 'usage', 'chi', 'witness'])
EngineResult = namedtuple('EngineResult', ['index', 'bits', 'status', 'colouring', 'trace', 'message'])

COLOURED = 'coloured'
SKIPPED = 'skipped'
FAILED = 'failed'


def read_text(path):
    try:
        with open(path, encoding='utf-8') as handle:
            return handle.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}")


def write_text(path, text):
    try:
        with open(path, 'w', encoding='utf-8') as handle:
            handle.write(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}")


def _one_source(builtin_name, file_path, pd):
    given = [value for value in (builtin_name, file_path, pd) if value]
    if len(given) != 1:
        raise InputError("give exactly one of --builtin, --file or --pd")


def resolve_orientation(value, graph, named=None):
    """
    Turn an --orientation value into an assignment.

    The value is tried as a named orientation of a built-in, then as a file
    holding 'o' records, then as an integer assignment index (vertex 0 is
    the least significant digit).

    Args:
        value (str): Name, path or integer
        graph (PlaneGraph): Graph to orient
        named (dict): Named orientations of a built-in graph

    Returns:
        tuple: (OrientationAssignment, label)

    Raises:
        UnknownNameError: The value matches nothing
    """
    named = named or {}
    if value in named:
        return named[value], value
    if os.path.isfile(value):
        return parse_orientation(read_text(value), graph), os.path.basename(value)
    try:
        index = int(value)
    except ValueError:
        choices = ', '.join(named) if named else 'a file or an integer'
        raise UnknownNameError(f"unknown orientation '{value}' (choose from {choices})")
    return OrientationAssignment.from_index(graph, index), f"index {index}"


def load_subject(builtin_name=None, file_path=None, pd=None, orientation=None, need_orientation=True):
    """
    Load a 4-regular graph and its orientation from the command-line sources.

    Built-ins default to their first named orientation and VOG files to
    their 'o' records; --orientation overrides both.

    Args:
        builtin_name (str): Catalog name
        file_path (str): VOG file
        pd (str): PD code, or a file holding one
        orientation (str): --orientation value
        need_orientation (bool): Raise when no orientation can be found

    Returns:
        Subject: name, graph, orientation and orientation label
    """
    _one_source(builtin_name, file_path, pd)
    named = {}
    sigma, label = None, None
    if builtin_name:
        entry = builtin(builtin_name)
        graph, named, name = entry.graph, entry.orientations, entry.name
        if named:
            label = next(iter(named))
            sigma = named[label]
    elif file_path:
        graph, sigma = parse_vog(read_text(file_path))
        name = os.path.basename(file_path)
        label = 'file' if sigma is not None else None
    else:
        text = read_text(pd) if os.path.isfile(pd) else pd
        graph = parse_pd(text)
        name = os.path.basename(pd) if os.path.isfile(pd) else 'pd'

    if graph.degree != 4:
        raise InputError(f"{name} is not 4-regular")
    if orientation is not None:
        sigma, label = resolve_orientation(orientation, graph, named)
    if sigma is None and need_orientation:
        raise OrientationError(f"{name} has no orientation; pass --orientation")
    logger.debug("loaded %s: %r, orientation %s", name, graph, label)
    return Subject(name, graph, sigma, label)


def load_cubic(builtin_name=None, file_path=None):
    """
    Load a cubic graph from the catalog or a VOG file.

    Returns:
        tuple: (name, CubicGraph)
    """
    _one_source(builtin_name, file_path, None)
    if builtin_name:
        if builtin_name not in cubic_names():
            raise UnknownNameError(
                f"unknown built-in cubic graph '{builtin_name}' (choose from {', '.join(cubic_names())})"
            )
        return builtin_name, builtin_cubic(builtin_name)
    graph, _ = parse_vog(read_text(file_path))
    if graph.degree != 3:
        raise InputError(f"{os.path.basename(file_path)} is not cubic")
    return os.path.basename(file_path), graph


def analyse(graph, sigma):
    """
    Every o-cycle, every decomposition and the o-chromatic index.

    Returns:
        Analysis: cycles, decompositions, usage map, chi_o (None when not
        o-colourable) and a witness colouring
    """
    cycles = sorted(enumerate_o_cycles(graph, sigma))
    decompositions = enumerate_decompositions(graph, sigma, cycles)
    usage = cycle_usage(cycles, decompositions)
    chi, witness = None, None
    if decompositions:
        chi, witness = chi_o(graph, sigma)
    return Analysis(cycles, decompositions, usage, chi, witness)


def run_parallel(items, worker, jobs=None, label="task"):
    """
    Run `worker` over `items` on a thread pool.

    Results come back in input order whatever order the workers finish in.
    The first failure, by input position, is re-raised once every task is done.

    Args:
        items (list): Work items
        worker (callable): Function of one item
        jobs (int): Worker count; defaults to OCHROMA_MAX_WORKERS
        label (str): Name used in progress logging

    Returns:
        list: worker(item) for each item
    """
    jobs = jobs or config.get_max_workers()
    results = {}
    errors = {}
    progress_lock = Lock()
    done = [0]

    def task(position, item):
        try:
            value = worker(item)
        except Exception as exc:
            with progress_lock:
                errors[position] = exc
                done[0] += 1
            return
        with progress_lock:
            results[position] = value
            done[0] += 1
            logger.info("[%s] %d/%d finished", label, done[0], len(items))

    if jobs <= 1 or len(items) <= 1:
        for position, item in enumerate(items):
            task(position, item)
    else:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as executor:
            futures = [executor.submit(task, position, item) for position, item in enumerate(items)]
            concurrent.futures.wait(futures)

    if errors:
        raise errors[min(errors)]
    return [results[position] for position in range(len(items))]


def cmd_analyze(subject, fmt=TEXT, witness=False):
    """
    Report the o-cycles, decompositions and o-chromatic index of an oriented graph.

    Args:
        subject (Subject): Loaded input
        fmt (str): TEXT or TSV
        witness (bool): Append the optimal colouring as 'c' records

    Returns:
        str: The report
    """
    graph, sigma = subject.graph, subject.sigma
    result = analyse(graph, sigma)
    index = {cycle: i for i, cycle in enumerate(result.cycles)}

    summary = [
        ('vertices', graph.vertex_count),
        ('edges', graph.edge_count),
        ('orientation', subject.orientation_label),
        ('bits', format_bits(sigma.bits)),
        ('o-cycles', len(result.cycles)),
        ('decompositions', len(result.decompositions)),
        ('chi_o', result.chi),
    ]
    cycle_rows = [
        (cycle_id(i), cycle.length, cycle.label(), format_edges(cycle.edges),
         format_participation(result.usage[cycle]))
        for i, cycle in enumerate(result.cycles)
    ]
    decomposition_rows = [
        (decomposition_id(i), ' '.join(cycle_id(index[c]) for c in decomposition.cycles),
         min_colours(decomposition)[0])
        for i, decomposition in enumerate(result.decompositions)
    ]
    tables = [
        render_table(f"ANALYSIS: {subject.name}", ('field', 'value'), summary, fmt),
        render_table("O-CYCLES", ('id', 'length', 'vertices', 'edges', 'decompositions'), cycle_rows, fmt),
        render_table("DECOMPOSITIONS", ('id', 'cycles', 'colours'), decomposition_rows, fmt),
    ]
    report = join_tables(tables)
    if witness:
        if result.witness is None:
            report += "\n# no witness: not o-colourable\n"
        else:
            report += "\n" + write_colouring(result.witness.edge_colours)
    return report


def cmd_orbits(subject, fmt=TEXT, jobs=None):
    """
    Group the orientation assignments of a graph into orbits under its map automorphisms.

    Each orbit representative is analysed; the analyses run on the thread pool.

    Returns:
        str: The report, opening with "<n> orbits (group order <g>)"
    """
    graph = subject.graph
    group = map_automorphisms(graph)
    classes = orbits(graph, group)
    burnside = burnside_count(graph, group)
    logger.info("%s: %d automorphisms, %d orbits", subject.name, len(group), len(classes))

    analyses = run_parallel(
        [orbit.representative for orbit in classes],
        lambda sigma: analyse(graph, sigma), jobs, label="orbits",
    )
    summary = [
        ('group order', len(group)),
        ('assignments', assignment_count(graph)),
        ('orbits', len(classes)),
        ('burnside', burnside),
    ]
    rows = [
        (i + 1, orbit.size, orbit.members[0], format_bits(orbit.representative.bits),
         len(result.cycles), len(result.decompositions), result.chi)
        for i, (orbit, result) in enumerate(zip(classes, analyses))
    ]
    headline = f"{len(classes)} orbits (group order {len(group)})\n\n"
    return headline + join_tables([
        render_table(f"ORBITS: {subject.name}", ('field', 'value'), summary, fmt),
        render_table("REPRESENTATIVES",
                     ('orbit', 'size', 'index', 'bits', 'o-cycles', 'decompositions', 'chi_o'), rows, fmt),
    ])


def tait_expand_document(subject):
    """VOG text of the Tait expansion; the 1-factor goes in a comment."""
    cubic, factor = tait_expand(subject.graph, subject.sigma)
    return f"# 1-factor {format_edges(factor)}\n" + write_vog(cubic)


def tait_contract_document(cubic, matching):
    """
    VOG text of the contraction along the matching-th perfect matching.

    Raises:
        InputError: No such matching
    """
    matchings = list(perfect_matchings(cubic))
    if not 0 <= matching < len(matchings):
        raise InputError(f"matching index {matching} out of range; the graph has {len(matchings)} perfect matchings")
    factor = matchings[matching]
    graph, sigma = tait_contract(cubic, factor)
    return f"# contracted 1-factor {format_edges(factor)}\n" + write_vog(graph, sigma)


def cmd_tait(direction, subject=None, cubic=None, matching=0, output=None):
    """
    Convert between oriented 4-regular graphs and cubic graphs with a 1-factor.

    Returns:
        str: The converted VOG document, or a note naming the output file
    """
    if direction == 'expand':
        document = tait_expand_document(subject)
    else:
        document = tait_contract_document(cubic, matching)
    if output:
        write_text(output, document)
        return f"wrote {output}\n"
    return document


def _engine_one(graph, index, sigma, allow_fallback):
    try:
        colouring, trace = o_colour(graph, sigma, allow_fallback)
    except InputError as exc:
        return EngineResult(index, sigma.bits, SKIPPED, None, None, str(exc))
    except Exception as exc:
        logger.debug("engine failed on assignment %d: %s", index, exc)
        return EngineResult(index, sigma.bits, FAILED, None, None, str(exc))
    return EngineResult(index, sigma.bits, COLOURED, colouring, trace, '')


def sweep_engine(graph, assignments=None, jobs=None, allow_fallback=None):
    """
    Run the colouring engine over many orientations of one graph.

    Orientations the engine does not accept are reported as skipped rather
    than raised.

    Args:
        graph (PlaneGraph): Embedded graph
        assignments (list): OrientationAssignment values; all of them by default
        jobs (int): Worker count
        allow_fallback (bool): Passed to o_colour

    Returns:
        list: EngineResult per assignment, in input order
    """
    if assignments is None:
        assignments = list(enumerate_assignments(graph))
    items = [(sigma.to_index(), sigma) for sigma in assignments]
    return run_parallel(
        items, lambda item: _engine_one(graph, item[0], item[1], allow_fallback), jobs, label="engine",
    )


def cmd_engine(subject, fmt=TEXT, sweep=False, jobs=None, output=None, allow_fallback=None):
    """
    Colour an oriented graph with the reduction engine and print its trace.

    With `sweep` every orientation of the graph is coloured instead and the
    report lists palette sizes and fallback frequency.

    Returns:
        str: The report
    """
    graph = subject.graph
    if sweep:
        return _engine_sweep_report(subject, sweep_engine(graph, None, jobs, allow_fallback), fmt)

    colouring, trace = o_colour(graph, subject.sigma, allow_fallback)
    if output:
        write_text(output, write_vog(graph, subject.sigma, colouring.edge_colours))
    summary = [
        ('orientation', subject.orientation_label),
        ('bits', format_bits(subject.sigma.bits)),
        ('palette', colouring.size),
        ('steps', len(trace.steps)),
        ('fallbacks', trace.fallback_count),
        ('new colours', len(trace.new_colour_events)),
    ]
    cycle_rows = [
        (cycle_id(i), colour, cycle.label(), format_edges(cycle.edges))
        for i, (cycle, colour) in enumerate(zip(colouring.cycles, colouring.colours))
    ]
    return join_tables([
        render_table(f"ENGINE: {subject.name}", ('field', 'value'), summary, fmt),
        render_table("COLOURING", ('id', 'colour', 'vertices', 'edges'), cycle_rows, fmt),
    ]) + "\n" + trace.to_text()


def _engine_sweep_report(subject, results, fmt):
    coloured = [r for r in results if r.status == COLOURED]
    with_fallback = [r for r in coloured if r.trace.fallback_count]
    summary = [
        ('assignments', len(results)),
        ('coloured', len(coloured)),
        ('skipped', sum(1 for r in results if r.status == SKIPPED)),
        ('failed', sum(1 for r in results if r.status == FAILED)),
        ('max palette', max((r.colouring.size for r in coloured), default=None)),
        ('runs with fallback', len(with_fallback)),
        ('fallback steps', sum(r.trace.fallback_count for r in coloured)),
    ]
    rows = [
        (r.index, format_bits(r.bits), r.status,
         r.colouring.size if r.colouring else None,
         r.trace.fallback_count if r.trace else None,
         len(r.trace.steps) if r.trace else None)
        for r in results
    ]
    return join_tables([
        render_table(f"ENGINE SWEEP: {subject.name}", ('field', 'value'), summary, fmt),
        render_table("ASSIGNMENTS", ('index', 'bits', 'status', 'palette', 'fallbacks', 'steps'), rows, fmt),
    ])


def scan_matching(cubic, factor):
    """
    Contract one perfect matching and decide o-colourability of the result.

    Returns:
        tuple: (o-colourable, chi_o or None)
    """
    graph, sigma = tait_contract(cubic, factor)
    if not is_o_colourable(graph, sigma):
        return False, None
    return True, chi_o(graph, sigma)[0]


def cmd_snark_scan(name, cubic, fmt=TEXT, jobs=None):
    """
    Contract every perfect matching of a cubic graph and check each contraction
    for o-colourability.

    Returns:
        str: Report with the matching and 3-edge-colouring counts and one row per matching
    """
    matchings = list(perfect_matchings(cubic))
    colourings = sum(1 for _ in three_edge_colourings(cubic))
    verdicts = run_parallel(matchings, lambda factor: scan_matching(cubic, factor), jobs, label="snark-scan")
    summary = [
        ('vertices', cubic.vertex_count),
        ('perfect matchings', len(matchings)),
        ('3-edge-colourings', colourings),
        ('non-o-colourable contractions', sum(1 for ok, _ in verdicts if not ok)),
    ]
    rows = [
        (i, format_edges(factor), ok, chi)
        for i, (factor, (ok, chi)) in enumerate(zip(matchings, verdicts))
    ]
    return join_tables([
        render_table(f"SNARK SCAN: {name}", ('field', 'value'), summary, fmt),
        render_table("MATCHINGS", ('matching', 'edges', 'o-colourable', 'chi_o'), rows, fmt),
    ])


def cmd_validate(subject, colouring_path=None, file_path=None):
    """
    Check an edge colouring against the o-colouring conditions.

    The colouring comes from `colouring_path`, or from the 'c' records of
    the input VOG file when no colouring file is given.

    Returns:
        str: One-line verdict for a valid colouring

    Raises:
        ValidationError: The colouring is not an o-colouring
    """
    source = colouring_path or file_path
    if not source:
        raise InputError("no colouring given; pass --colouring")
    colours = parse_colouring(read_text(source), subject.graph.edge_count)
    if not colours:
        raise InputError(f"{source} has no 'c' records")
    if not validate_o_colouring(subject.graph, subject.sigma, colours):
        reason = explain_o_colouring(subject.graph, subject.sigma, colours)
        raise ValidationError(reason or "some colour class is not a union of vertex-disjoint o-cycles")
    colouring = ocolouring_from_edge_colours(subject.graph, subject.sigma, colours)
    return f"valid o-colouring: {colouring.size} colours, {len(colouring.cycles)} o-cycles\n"


def known_inputs():
    """Names accepted by --builtin, for help text."""
    return builtin_names() + cubic_names()


def search_orientations(graph, table, jobs=None):
    """
    Every orientation assignment whose analysis reproduces a published table.

    Args:
        graph (PlaneGraph): The catalog graph
        table (Table): Published cycle list and decomposition rows
        jobs (int): Worker count

    Returns:
        list: Matching OrientationAssignment values in index order
    """
    assignments = list(enumerate_assignments(graph))
    verdicts = run_parallel(assignments, lambda sigma: reproduces(graph, sigma, table), jobs,
                            label=f"search {table.orientation}")
    found = [sigma for sigma, ok in zip(assignments, verdicts) if ok]
    logger.info("%s: %d of %d assignments reproduce the table", table.orientation, len(found), len(assignments))
    return found


def cmd_regenerate(name, fmt=TEXT, jobs=None):
    """
    Search the orientation bits of a catalog graph against its published tables.

    Raises:
        UnknownNameError: The graph has no published tables

    Returns:
        str: One row per table with the stored bits and every matching assignment
    """
    tables = published(name)
    entry = builtin(name)
    rows = []
    for table in tables:
        found = search_orientations(entry.graph, table, jobs)
        stored = entry.orientations[table.orientation]
        rows.append((
            table.orientation,
            format_bits(stored.bits),
            ' '.join(format_bits(sigma.bits) for sigma in found) or '-',
            'ok' if stored in found else 'MISMATCH',
        ))
    return render_table(f"REGENERATE: {name}", ('orientation', 'stored', 'matches', 'status'), rows, fmt)
