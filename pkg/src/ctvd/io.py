"""Plain-text formats for instances and kernelization traces.

Instance documents:

    # comment lines start with '#'
    ctvd <n> <m> <k>
    u v [mult]        one line per edge, 0-based indices, mult defaults to 1
    loop u [mult]     self-loops

with m counting the edge and loop lines.  The serializer is canonical
(sorted lines, multiplicity omitted when 1), so serialize-parse-serialize is
the identity.

Trace documents carry one record per line (`<rule> k=<a>-><b> key=value ...`)
and a final `result ...` summary line; parse followed by serialize is
byte-identical.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import Instance, MultiGraph
from .kernelizer import KernelResult, TraceRecord


class DocumentError(ValueError):
    """Raised when a document cannot be parsed."""


def parse_instance(text: str) -> Instance:
    lines = [
        (i + 1, line.strip())
        for i, line in enumerate(text.splitlines())
        if line.strip() and not line.strip().startswith("#")
    ]
    if not lines:
        raise DocumentError("empty document: missing 'ctvd <n> <m> <k>' header")
    header_no, header = lines[0]
    parts = header.split()
    if len(parts) != 4 or parts[0] != "ctvd":
        raise DocumentError(f"line {header_no}: expected 'ctvd <n> <m> <k>'")
    try:
        n, m, k = (int(p) for p in parts[1:])
    except ValueError as exc:
        raise DocumentError(f"line {header_no}: non-integer header field") from exc
    if n < 0 or m < 0 or k < 0:
        raise DocumentError(f"line {header_no}: negative header field")
    if len(lines) - 1 != m:
        raise DocumentError(
            f"header declares {m} records but document has {len(lines) - 1}"
        )
    g = MultiGraph()
    ids = g.add_vertices(n)
    seen_pairs: set[tuple[int, int]] = set()
    seen_loops: set[int] = set()
    for line_no, line in lines[1:]:
        fields = line.split()
        if fields[0] == "loop":
            if len(fields) not in (2, 3):
                raise DocumentError(f"line {line_no}: expected 'loop u [mult]'")
            u = _index(fields[1], n, line_no)
            mult = _mult(fields[2] if len(fields) == 3 else "1", line_no)
            if u in seen_loops:
                raise DocumentError(f"line {line_no}: duplicate loop line for {u}")
            seen_loops.add(u)
            g.add_loop(ids[u], mult)
            continue
        if len(fields) not in (2, 3):
            raise DocumentError(f"line {line_no}: expected 'u v [mult]'")
        u = _index(fields[0], n, line_no)
        v = _index(fields[1], n, line_no)
        if u == v:
            raise DocumentError(f"line {line_no}: use 'loop {u}' for self-loops")
        mult = _mult(fields[2] if len(fields) == 3 else "1", line_no)
        pair = (min(u, v), max(u, v))
        if pair in seen_pairs:
            raise DocumentError(f"line {line_no}: duplicate edge line {pair}")
        seen_pairs.add(pair)
        g.add_edge(ids[u], ids[v], mult)
    return Instance(g, k)


def _index(token: str, n: int, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError as exc:
        raise DocumentError(f"line {line_no}: non-integer vertex {token!r}") from exc
    if not 0 <= value < n:
        raise DocumentError(f"line {line_no}: vertex {value} out of range [0, {n})")
    return value


def _mult(token: str, line_no: int) -> int:
    try:
        value = int(token)
    except ValueError as exc:
        raise DocumentError(f"line {line_no}: non-integer multiplicity") from exc
    if value < 1:
        raise DocumentError(f"line {line_no}: multiplicity must be positive")
    return value


def serialize_instance(instance: Instance) -> str:
    """Canonical form; vertex ids are remapped to 0..n-1 in sorted order."""
    g = instance.graph
    index = {v: i for i, v in enumerate(g.vertices)}
    records = []
    for u, v, m in g.edges():
        suffix = f" {m}" if m > 1 else ""
        records.append(f"{index[u]} {index[v]}{suffix}")
    for v, c in g.loops():
        suffix = f" {c}" if c > 1 else ""
        records.append(f"loop {index[v]}{suffix}")
    header = f"ctvd {g.vertex_count} {len(records)} {instance.k}"
    return "\n".join([header] + records) + "\n"


def load_instance(path) -> Instance:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_instance(fh.read())


def save_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(instance))


@dataclass(frozen=True)
class TraceDocument:
    records: tuple[TraceRecord, ...]
    status: str  # "kernel" or "no-instance"
    n: int
    k: int
    s_size: int
    bound: int
    within: bool


def trace_document(result: KernelResult) -> TraceDocument:
    status = "no-instance" if result.no_instance else "kernel"
    return TraceDocument(
        records=result.trace,
        status=status,
        n=result.instance.graph.vertex_count,
        k=result.instance.k,
        s_size=result.s_size,
        bound=result.bound,
        within=result.within_bound,
    )


def serialize_trace(doc: TraceDocument) -> str:
    lines = []
    for rec in doc.records:
        parts = [rec.rule, f"k={rec.k_before}->{rec.k_after}"]
        parts += [f"{key}={value}" for key, value in rec.params]
        lines.append(" ".join(parts))
    lines.append(
        f"result status={doc.status} n={doc.n} k={doc.k} "
        f"s={doc.s_size} bound={doc.bound} within={'yes' if doc.within else 'no'}"
    )
    return "\n".join(lines) + "\n"


def parse_trace(text: str) -> TraceDocument:
    lines = [line for line in text.splitlines() if line.strip()]
    if not lines or not lines[-1].startswith("result "):
        raise DocumentError("trace document must end with a 'result' line")
    records = []
    for line in lines[:-1]:
        fields = line.split(" ")
        if len(fields) < 2 or not fields[1].startswith("k="):
            raise DocumentError(f"malformed trace record {line!r}")
        before, _, after = fields[1][2:].partition("->")
        try:
            k_before, k_after = int(before), int(after)
        except ValueError as exc:
            raise DocumentError(f"malformed budget in {line!r}") from exc
        params = []
        for token in fields[2:]:
            key, sep, value = token.partition("=")
            if not sep:
                raise DocumentError(f"malformed parameter {token!r} in {line!r}")
            params.append((key, value))
        records.append(TraceRecord(fields[0], k_before, k_after, tuple(params)))
    summary = dict(
        token.partition("=")[::2] for token in lines[-1].split(" ")[1:]
    )
    try:
        return TraceDocument(
            records=tuple(records),
            status=summary["status"],
            n=int(summary["n"]),
            k=int(summary["k"]),
            s_size=int(summary["s"]),
            bound=int(summary["bound"]),
            within=summary["within"] == "yes",
        )
    except KeyError as exc:
        raise DocumentError(f"result line is missing field {exc}") from exc


def replay_document(original: Instance, doc: TraceDocument) -> Instance:
    """Re-apply a parsed trace; mirrors kernelizer.replay."""
    from .kernelizer import KernelResult, replay

    stub = KernelResult(
        instance=original,
        no_instance=doc.status == "no-instance",
        trace=doc.records,
        modulator=frozenset(),
        bound=doc.bound,
    )
    return replay(original, stub)
