"""Self-check of the worked example: every identity re-derived from built-in data."""
from __future__ import annotations

from dataclasses import dataclass, field

from . import paper
from .frames import CoordinateProjector, EutacticStar, OrthonormalBasis, is_parseval, project_basis
from .interferometer import apply_circuit, invert_circuit, paper_encoder
from .linalg import DEFAULT_TOL, EXACT, FLOAT, Matrix, Vector, commutator, dyad, inner
from .quadfield import QuadScalar
from .sharing import LeakFlag, analyze_leakage, make_codebook, split


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str
    # named numeric results (floats or nested lists) for cross-backend comparison
    values: dict = field(default_factory=dict)


class ExampleData:
    """Built-in vectors on one backend; ``corrupt`` nudges ``w`` for failure drills."""

    def __init__(self, backend: str = EXACT, corrupt: bool = False) -> None:
        w = paper.share_w()
        if corrupt:
            w = w + Vector([0, 0, 0, QuadScalar(1, 0) / 1000], EXACT)
        vecs = {
            "w": w, "x": paper.share_x(), "y": paper.share_y(), "z": paper.share_z(),
            "wy": paper.codeword_wy(), "xz": paper.codeword_xz(),
            "q3": paper.quadrit_3(), "q4": paper.quadrit_4(),
        }
        mats = {"P_wy": paper.projector_wy(), "P_xz": paper.projector_xz()}
        worst = paper.worst_case_basis()
        if backend == FLOAT:
            vecs = {k: v.to_float() for k, v in vecs.items()}
            mats = {k: m.to_float() for k, m in mats.items()}
            worst = [v.to_float() for v in worst]
        self.backend = backend
        self.v = vecs
        self.m = mats
        self.worst = worst


def _vec(v: Vector) -> list[float]:
    return [float(e) for e in v]


def _mat(m: Matrix) -> list[list[float]]:
    return [[float(e) for e in r] for r in m.rows]


def check_recombination(d: ExampleData, tol: float) -> CheckResult:
    v = d.v
    wy, xz = v["w"] + v["y"], v["x"] + v["z"]
    ok = wy.equals(v["wy"], tol) and xz.equals(v["xz"], tol)
    return CheckResult("recombination", ok, "w+y and x+z equal the reference codewords",
                       {"w+y": _vec(wy), "x+z": _vec(xz)})


def check_orthonormality(d: ExampleData, tol: float) -> CheckResult:
    words = [d.v["wy"], d.v["xz"], d.v["q3"], d.v["q4"]]
    gram = Matrix([[inner(a, b) for b in words] for a in words], d.backend)
    ok = gram.equals(Matrix.identity(4, d.backend), tol)
    return CheckResult("orthonormality", ok, "Gram matrix of {w+y, x+z, q3, q4} is the identity",
                       {"gram": _mat(gram)})


def check_projectors(d: ExampleData, tol: float) -> CheckResult:
    a, b = dyad(d.v["w"] + d.v["y"]), dyad(d.v["x"] + d.v["z"])
    ok = a.equals(d.m["P_wy"], tol) and b.equals(d.m["P_xz"], tol)
    return CheckResult("projectors", ok, "dyads of the codewords match the reference 4x4 projectors",
                       {"dyad(w+y)": _mat(a), "dyad(x+z)": _mat(b)})


def check_noncommeasurable(d: ExampleData, tol: float) -> CheckResult:
    c2 = commutator(dyad(d.v["w"]), dyad(d.v["x"]))
    c1 = commutator(dyad(d.v["y"]), dyad(d.v["z"]))
    ok = not c1.is_zero(tol) and not c2.is_zero(tol)
    return CheckResult("noncommeasurability", ok, "share dyads fail to commute for both parties",
                       {"[yy,zz]": _mat(c1), "[ww,xx]": _mat(c2)})


def check_parseval(d: ExampleData, tol: float) -> CheckResult:
    basis = OrthonormalBasis((d.v["wy"], d.v["xz"], d.v["q3"], d.v["q4"]),
                             tol=tol if d.backend == FLOAT else 0.0)
    lo = is_parseval(project_basis(basis, CoordinateProjector(4, (1, 2))), tol)
    hi = is_parseval(project_basis(basis, CoordinateProjector(4, (3, 4))), tol)
    p12, p34 = CoordinateProjector(4, (1, 2)), CoordinateProjector(4, (3, 4))
    sub_wx = is_parseval(EutacticStar(2, (p34.restrict(d.v["w"]), p34.restrict(d.v["x"])), d.backend), tol)
    sub_yz = is_parseval(EutacticStar(2, (p12.restrict(d.v["y"]), p12.restrict(d.v["z"])), d.backend), tol)
    exact_zero = d.backend == FLOAT or (lo.defect == 0.0 and hi.defect == 0.0)
    ok = bool(lo) and bool(hi) and exact_zero and not sub_wx and not sub_yz
    return CheckResult(
        "parseval", ok,
        "quadrit projections onto {1,2} and {3,4} are Parseval; {w,x} and {y,z} are not",
        {"defect{1,2}": lo.defect, "defect{3,4}": hi.defect,
         "defect{w,x}": sub_wx.defect, "defect{y,z}": sub_yz.defect},
    )


def check_circuit(d: ExampleData, tol: float) -> CheckResult:
    enc = paper_encoder()
    e1 = Vector.basis(4, 4, d.backend)
    e2 = Vector.basis(4, 1, d.backend)
    out1, out2 = apply_circuit(enc, e1), apply_circuit(enc, e2)
    roundtrip = invert_circuit(enc).matrix(d.backend) @ enc.matrix(d.backend)
    ok = (out1.equals(d.v["w"] + d.v["y"], tol) and out2.equals(d.v["x"] + d.v["z"], tol)
          and roundtrip.equals(Matrix.identity(4, d.backend), tol))
    return CheckResult("circuit", ok,
                       "encoder maps (0,0,0,1) to w+y and (1,0,0,0) to x+z; decoder undoes it",
                       {"enc(e1)": _vec(out1), "enc(e2)": _vec(out2), "dec*enc": _mat(roundtrip)})


def check_worst_case(d: ExampleData, tol: float) -> CheckResult:
    book = make_codebook(d.worst, tol)
    rep = analyze_leakage(book, paper.worst_case_split())
    first = rep.parties[0]
    ok = (first.flag is LeakFlag.DETERMINISTIC
          and abs(first.probabilities[(0, 1)] - 1.0) <= 1e-9
          and abs(first.probabilities[(0, 2)] - 1.0) <= 1e-9)
    return CheckResult("worst-case", ok,
                       "a share on a single basis direction discriminates deterministically",
                       {f"party{p.party}": [p.probabilities[k] for k in sorted(p.probabilities)]
                        for p in rep.parties})


def check_split(d: ExampleData, tol: float) -> CheckResult:
    book = make_codebook([d.v["wy"], d.v["xz"]], tol)
    shares = split(book, paper.paper_split())
    ok = (shares[0].fragments[0].equals(d.v["y"], tol) and shares[0].fragments[1].equals(d.v["z"], tol)
          and shares[1].fragments[0].equals(d.v["w"], tol) and shares[1].fragments[1].equals(d.v["x"], tol))
    return CheckResult("split", ok, "diag(1,1,0,0) and diag(0,0,1,1) cut the codewords into {y,z} and {w,x}",
                       {f"party{s.party}": [_vec(f) for f in s.fragments] for s in shares})


CHECKS = [
    check_recombination,
    check_split,
    check_orthonormality,
    check_projectors,
    check_noncommeasurable,
    check_parseval,
    check_circuit,
    check_worst_case,
]


def run_checks(backend: str = EXACT, tol: float = DEFAULT_TOL, corrupt: bool = False) -> list[CheckResult]:
    data = ExampleData(backend, corrupt)
    results = []
    for check in CHECKS:
        try:
            results.append(check(data, tol))
        except ValueError as exc:
            results.append(CheckResult(check.__name__.removeprefix("check_"), False, f"error: {exc}"))
    return results
