"""Line-oriented text formats for stars, bases, codebooks, shares and circuits.

Every document is a list of ``keyword payload`` lines; ``#`` starts a
comment. Vector rows are comma-separated scalars in the exact grammar
(``1/2``, ``-1/4*s2``, ``1/2 + 1/4*s2``) or as decimal floats, depending
on the ``backend`` line. Coordinates are 1-based.

Example star file::

    kind star
    backend exact
    dim 2
    source_dim 2
    row -1/4*s2, 1/2*s2
    row -3/4, -1/2
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

from .frames import CoordinateProjector, EutacticStar, OrthonormalBasis
from .interferometer import RotationCircuit, RotationGate
from .linalg import BACKENDS, EXACT, FLOAT, Matrix, PiAngle, Vector
from .quadfield import format_exact, format_float, parse_exact, parse_float
from .sharing import Codebook, Share, ShareSplit


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0, source: str = "<text>"):
        self.line = line
        self.column = column
        self.source = source
        super().__init__(f"{source}:{line}:{column}: {message}")


@dataclass
class _Line:
    no: int
    key: str
    payload: str
    col: int  # 1-based column where the payload starts


class _Doc:
    def __init__(self, text: str, source: str) -> None:
        self.source = source
        self.lines: list[_Line] = []
        for no, raw in enumerate(text.splitlines(), start=1):
            body = raw.split("#", 1)[0].rstrip()
            if not body.strip():
                continue
            stripped = body.lstrip()
            lead = len(body) - len(stripped)
            key, _, rest = stripped.partition(" ")
            col = lead + len(key) + 2 + (len(rest) - len(rest.lstrip()))
            self.lines.append(_Line(no, key, rest.strip(), col))
        self.pos = 0

    def error(self, msg: str, line: _Line | None = None, col: int | None = None) -> ParseError:
        if line is None:
            last = self.lines[-1].no if self.lines else 0
            return ParseError(msg, last + 1 if self.lines else 1, 1, self.source)
        return ParseError(msg, line.no, col if col is not None else line.col, self.source)

    def take(self, key: str) -> _Line:
        if self.pos >= len(self.lines):
            raise self.error(f"expected '{key}' but the document ended")
        ln = self.lines[self.pos]
        if ln.key != key:
            raise self.error(f"expected '{key}', found '{ln.key}'", ln, ln.col - len(ln.key) - 1)
        self.pos += 1
        return ln

    def peek(self) -> str | None:
        return self.lines[self.pos].key if self.pos < len(self.lines) else None

    def done(self) -> None:
        if self.pos != len(self.lines):
            ln = self.lines[self.pos]
            raise self.error(f"unexpected '{ln.key}' line", ln, 1)

    def int_field(self, key: str, minimum: int = 1) -> int:
        ln = self.take(key)
        try:
            val = int(ln.payload)
        except ValueError:
            raise self.error(f"'{key}' needs an integer, got {ln.payload!r}", ln) from None
        if val < minimum:
            raise self.error(f"'{key}' must be at least {minimum}", ln)
        return val

    def int_list(self, ln: _Line) -> list[int]:
        out = []
        for m in re.finditer(r"\S+", ln.payload):
            try:
                out.append(int(m.group()))
            except ValueError:
                raise self.error(f"expected an integer, got {m.group()!r}", ln,
                                 ln.col + m.start()) from None
        return out

    def backend(self) -> str:
        ln = self.take("backend")
        if ln.payload not in BACKENDS:
            raise self.error(f"unknown backend {ln.payload!r}", ln)
        return ln.payload

    def kind(self, want: str) -> None:
        ln = self.take("kind")
        if ln.payload != want:
            raise self.error(f"expected a {want} document, got {ln.payload!r}", ln)

    def row(self, backend: str, dim: int) -> Vector:
        ln = self.take("row")
        parse = parse_exact if backend == EXACT else parse_float
        entries = []
        offset = 0
        for cell in ln.payload.split(","):
            try:
                entries.append(parse(cell))
            except ValueError as exc:
                lead = len(cell) - len(cell.lstrip())
                raise self.error(str(exc), ln, ln.col + offset + lead) from None
            offset += len(cell) + 1
        if len(entries) != dim:
            raise self.error(f"row has {len(entries)} entries, expected {dim}", ln)
        return Vector(entries, backend)


def _fmt_row(v: Vector) -> str:
    fmt = format_exact if v.backend == EXACT else format_float
    return "row " + ", ".join(fmt(e) for e in v)


def _header(kind: str, backend: str | None = None) -> list[str]:
    out = [f"kind {kind}"]
    if backend is not None:
        out.append(f"backend {backend}")
    return out


# ---------------------------------------------------------------------------
# Stars and bases
# ---------------------------------------------------------------------------


def dump_star(star: EutacticStar) -> str:
    lines = _header("star", star.backend)
    lines += [f"dim {star.ambient_dim}", f"source_dim {star.source_dim}"]
    lines += [_fmt_row(v) for v in star.vectors]
    return "\n".join(lines) + "\n"


def load_star(text: str, source: str = "<star>") -> EutacticStar:
    d = _Doc(text, source)
    d.kind("star")
    be = d.backend()
    n = d.int_field("dim")
    m = d.int_field("source_dim", minimum=0)
    vecs = tuple(d.row(be, n) for _ in range(m))
    d.done()
    return EutacticStar(n, vecs, be)


def dump_basis(basis: OrthonormalBasis) -> str:
    lines = _header("basis", basis.backend) + [f"dim {basis.dim}"]
    lines += [_fmt_row(v) for v in basis.vectors]
    return "\n".join(lines) + "\n"


def load_basis(text: str, source: str = "<basis>", tol: float = 1e-9) -> OrthonormalBasis:
    d = _Doc(text, source)
    d.kind("basis")
    be = d.backend()
    m = d.int_field("dim")
    vecs = tuple(d.row(be, m) for _ in range(m))
    d.done()
    return OrthonormalBasis(vecs, tol=tol if be == FLOAT else 0.0)


def dump_projector(proj: CoordinateProjector) -> str:
    lines = _header("projector") + [f"dim {proj.dim}", "kept " + " ".join(map(str, proj.kept))]
    return "\n".join(lines) + "\n"


def load_projector(text: str, source: str = "<projector>") -> CoordinateProjector:
    d = _Doc(text, source)
    d.kind("projector")
    m = d.int_field("dim")
    ln = d.take("kept")
    kept = d.int_list(ln)
    d.done()
    try:
        return CoordinateProjector(m, tuple(kept))
    except ValueError as exc:
        raise d.error(str(exc), ln) from None


# ---------------------------------------------------------------------------
# Codebooks, splits, shares
# ---------------------------------------------------------------------------


def dump_codebook(book: Codebook) -> str:
    lines = _header("codebook", book.backend) + [f"dim {book.dim}", f"messages {book.size}"]
    lines += [_fmt_row(v) for v in book.messages]
    return "\n".join(lines) + "\n"


def load_codebook_vectors(text: str, source: str = "<codebook>") -> list[Vector]:
    """Codeword rows of a codebook document; validation is left to ``make_codebook``."""
    d = _Doc(text, source)
    d.kind("codebook")
    be = d.backend()
    m = d.int_field("dim")
    k = d.int_field("messages")
    vecs = [d.row(be, m) for _ in range(k)]
    d.done()
    return vecs


def dump_split(parts: ShareSplit) -> str:
    lines = _header("split") + [f"dim {parts.dim}"]
    lines += ["part " + " ".join(map(str, p.kept)) for p in parts.parts]
    return "\n".join(lines) + "\n"


def load_split(text: str, source: str = "<split>") -> ShareSplit:
    d = _Doc(text, source)
    d.kind("split")
    m = d.int_field("dim")
    kept_sets = []
    while d.peek() == "part":
        kept_sets.append(d.int_list(d.take("part")))
    d.done()
    if not kept_sets:
        raise d.error("split needs at least one 'part' line")
    try:
        return ShareSplit.from_kept(m, kept_sets)
    except ValueError as exc:
        raise ParseError(str(exc), d.lines[-1].no, 1, source) from None


def dump_share(share: Share) -> str:
    be = share.fragments[0].backend
    lines = _header("share", be) + [
        f"dim {share.dim}",
        f"party {share.party}",
        "kept " + " ".join(map(str, share.projector.kept)),
        f"messages {len(share.fragments)}",
    ]
    lines += [_fmt_row(v) for v in share.fragments]
    return "\n".join(lines) + "\n"


def load_share(text: str, source: str = "<share>") -> Share:
    d = _Doc(text, source)
    d.kind("share")
    be = d.backend()
    m = d.int_field("dim")
    party = d.int_field("party")
    ln = d.take("kept")
    try:
        proj = CoordinateProjector(m, tuple(d.int_list(ln)))
    except ValueError as exc:
        raise d.error(str(exc), ln) from None
    k = d.int_field("messages")
    frags = []
    for _ in range(k):
        row_line = d.lines[d.pos] if d.pos < len(d.lines) else None
        v = d.row(be, m)
        stray = [i + 1 for i, e in enumerate(v) if i + 1 not in proj.kept and e != 0]
        if stray:
            raise d.error(f"fragment has weight outside kept coordinates {stray}", row_line)
        frags.append(v)
    d.done()
    return Share(party, proj, tuple(frags))


# ---------------------------------------------------------------------------
# Matrices and circuits
# ---------------------------------------------------------------------------


def dump_matrix(mat: Matrix) -> str:
    r, c = mat.shape
    lines = _header("matrix", mat.backend) + [f"rows {r}", f"cols {c}"]
    lines += [_fmt_row(mat.row(i)) for i in range(r)]
    return "\n".join(lines) + "\n"


def load_matrix(text: str, source: str = "<matrix>") -> Matrix:
    d = _Doc(text, source)
    d.kind("matrix")
    be = d.backend()
    r = d.int_field("rows")
    c = d.int_field("cols")
    rows = [d.row(be, c).entries for _ in range(r)]
    d.done()
    return Matrix(rows, be)


_PI_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?\*pi$")


def format_angle(angle) -> str:
    if isinstance(angle, PiAngle):
        k = angle.coef * 8
        if k.denominator == 1:
            return f"{k.numerator}/8*pi"
        return f"{angle.coef.numerator}/{angle.coef.denominator}*pi"
    return format_float(angle)


def parse_angle(text: str):
    m = _PI_RE.match(text)
    if m:
        return PiAngle(Fraction(int(m.group(1)), int(m.group(2) or 1)))
    return parse_float(text)


def dump_circuit(circuit: RotationCircuit, backend: str = EXACT) -> str:
    lines = _header("circuit", backend) + [f"dim {circuit.dim}"]
    for g in circuit.gates:
        lines.append(f"gate {g.plane[0]} {g.plane[1]} {format_angle(g.angle)}")
    if circuit.signs is not None:
        lines.append("signs " + " ".join(str(s) for s in circuit.signs))
    return "\n".join(lines) + "\n"


def load_circuit(text: str, source: str = "<circuit>") -> tuple[RotationCircuit, str]:
    d = _Doc(text, source)
    d.kind("circuit")
    be = d.backend()
    m = d.int_field("dim")
    gates = []
    while d.peek() == "gate":
        ln = d.take("gate")
        parts = ln.payload.split()
        if len(parts) != 3:
            raise d.error("gate line needs 'i j angle'", ln)
        try:
            i, j = int(parts[0]), int(parts[1])
        except ValueError:
            raise d.error("gate plane must be two integers", ln) from None
        try:
            angle = parse_angle(parts[2])
        except ValueError as exc:
            raise d.error(str(exc), ln, ln.col + ln.payload.index(parts[2], len(parts[0]) + len(parts[1]))) from None
        if be == EXACT and not (isinstance(angle, PiAngle) and angle.eighths is not None):
            raise d.error("exact circuits need angles that are multiples of pi/4", ln)
        if not 1 <= i < j <= m:
            raise d.error(f"gate plane ({i}, {j}) invalid for dim {m}", ln)
        gates.append(RotationGate((i, j), angle))
    signs = None
    if d.peek() == "signs":
        ln = d.take("signs")
        signs = d.int_list(ln)
        if len(signs) != m or any(s not in (1, -1) for s in signs):
            raise d.error("signs line needs one +1/-1 per mode", ln)
    d.done()
    return RotationCircuit(m, tuple(gates), tuple(signs) if signs else None), be


def read_text(path: str | Path) -> str:
    return Path(path).read_text(encoding="utf-8")


def write_text(path: str | Path, text: str) -> None:
    Path(path).write_text(text, encoding="utf-8")
