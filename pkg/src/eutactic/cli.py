"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
3 incomplete share set on ``share recombine``.
"""
from __future__ import annotations

import argparse
import json
import statistics
import sys
from pathlib import Path

from . import __version__
from .fileio import (
    ParseError,
    dump_basis,
    dump_circuit,
    dump_codebook,
    dump_projector,
    dump_share,
    load_codebook_vectors,
    load_matrix,
    load_share,
    load_split,
    load_star,
    read_text,
    write_text,
)
from .frames import NotParsevalError, is_parseval, naimark_dilate
from .interferometer import NotOrthogonalError, decompose, reconstruction_residual
from .linalg import DEFAULT_TOL, EXACT, FLOAT, Matrix
from .randomness import random_exact_circuit, random_orthogonal, trial_rng
from .quadfield import BackendError, NotRepresentableError
from .sharing import (
    AmbiguousStateError,
    CodebookError,
    IncompleteShareError,
    LeakageReport,
    ShareSplit,
    analyze_leakage,
    decode,
    encode,
    make_codebook,
    recombine,
    split,
)
from .verify import run_checks

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_INCOMPLETE = 3

DEFAULT_SEED = 20031


class UsageError(Exception):
    pass


def _fmt(x: float) -> str:
    return f"{x:.15g}"


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.format == "structured":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


def _resolve_backend(requested: str, data_backend: str) -> str:
    """Backend for a computation; ``auto`` follows the input data."""
    if requested == "auto":
        return data_backend
    if requested == EXACT and data_backend == FLOAT:
        raise UsageError("input holds float values; it cannot run on the exact backend")
    return requested


# ---------------------------------------------------------------------------
# verify-paper
# ---------------------------------------------------------------------------


def cmd_verify_paper(args) -> int:
    backend = EXACT if args.backend == "auto" else args.backend
    results = run_checks(backend, args.tolerance, corrupt=args.corrupt)
    lines = [f"verify-paper backend={backend} tolerance={args.tolerance:g}"]
    for r in results:
        lines.append(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<20} {r.detail}")
    failed = [r for r in results if not r.passed]
    if failed:
        lines.append(f"first failure: {failed[0].name}")
    lines.append(f"result: {len(results) - len(failed)}/{len(results)} passed")
    payload = {
        "backend": backend,
        "checks": [{"name": r.name, "passed": r.passed, "values": r.values} for r in results],
        "passed": not failed,
    }
    _emit(args, lines, payload)
    return EXIT_FAIL if failed else EXIT_OK


# ---------------------------------------------------------------------------
# star
# ---------------------------------------------------------------------------


def _load_star(args):
    star = load_star(read_text(args.file), str(args.file))
    backend = _resolve_backend(args.backend, star.backend)
    if backend != star.backend:
        star = star.to_float()
    return star


def cmd_star_check(args) -> int:
    star = _load_star(args)
    report = is_parseval(star, args.tolerance)
    verdict = "Parseval" if report else "not Parseval"
    lines = [
        f"star {args.file}: {star.source_dim} vectors in R^{star.ambient_dim} ({star.backend})",
        f"verdict: {verdict}",
        f"defect: {_fmt(report.defect)}",
    ]
    payload = {"file": str(args.file), "backend": star.backend, "parseval": bool(report),
               "defect": report.defect, "n": star.ambient_dim, "m": star.source_dim}
    _emit(args, lines, payload)
    return EXIT_OK if report else EXIT_FAIL


def cmd_star_dilate(args) -> int:
    star = _load_star(args)
    note = None
    try:
        basis, proj = naimark_dilate(star, args.tolerance)
    except NotRepresentableError as exc:
        if args.backend != "auto":
            raise UsageError(f"{exc}; rerun with --backend float") from None
        note = f"exact dilation impossible ({exc}); used the float backend"
        star = star.to_float()
        basis, proj = naimark_dilate(star, args.tolerance)
    stem = Path(args.file).with_suffix("")
    basis_out = Path(args.basis_out or f"{stem}.basis.txt")
    proj_out = Path(args.projector_out or f"{stem}.projector.txt")
    write_text(basis_out, dump_basis(basis))
    write_text(proj_out, dump_projector(proj))
    lines = [f"dilated {star.source_dim} vectors in R^{star.ambient_dim} to a basis of R^{basis.dim}"]
    if note:
        lines.append(f"note: {note}")
    lines += [f"basis: {basis_out}", f"projector: {proj_out}"]
    _emit(args, lines, {"basis": str(basis_out), "projector": str(proj_out),
                        "backend": basis.backend, "note": note})
    return EXIT_OK


# ---------------------------------------------------------------------------
# share
# ---------------------------------------------------------------------------


def _load_book(args, path):
    vecs = load_codebook_vectors(read_text(path), str(path))
    backend = _resolve_backend(args.backend, vecs[0].backend)
    if backend != vecs[0].backend:
        vecs = [v.to_float() for v in vecs]
    return make_codebook(vecs, args.tolerance)


def cmd_share_split(args) -> int:
    book = _load_book(args, args.codebook)
    parts = load_split(read_text(args.split), str(args.split))
    shares = split(book, parts)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    lines = []
    written = []
    for sh in shares:
        path = out_dir / f"share_{sh.party}.txt"
        write_text(path, dump_share(sh))
        written.append(str(path))
        lines.append(f"party {sh.party} kept {' '.join(map(str, sh.projector.kept))} -> {path}")
    _emit(args, lines, {"shares": written})
    return EXIT_OK


def cmd_share_recombine(args) -> int:
    shares = [load_share(read_text(p), str(p)) for p in args.shares]
    backends = {s.fragments[0].backend for s in shares}
    if len(backends) > 1:
        raise UsageError("share files mix exact and float backends")
    words = recombine(shares)
    book = make_codebook(words, args.tolerance)
    text = dump_codebook(book)
    if args.out:
        write_text(args.out, text)
        _emit(args, [f"recovered {book.size} codewords in R^{book.dim} -> {args.out}"],
              {"codebook": str(args.out), "messages": book.size})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _parse_priors(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"bad --priors {text!r}") from None


def leakage_lines(rep: LeakageReport) -> list[str]:
    lines = ["leakage report", "priors " + " ".join(_fmt(p) for p in rep.priors)]
    for p in rep.parties:
        lines.append(f"party {p.party} kept {' '.join(map(str, p.kept))} flag {p.flag.value}")
        for (mu, nu), prob in sorted(p.probabilities.items()):
            lines.append(f"  pair {mu} {nu} probability {_fmt(prob)}")
    return lines


def cmd_share_leakage(args) -> int:
    book = _load_book(args, args.codebook)
    parts = load_split(read_text(args.split), str(args.split))
    try:
        rep = analyze_leakage(book, parts, _parse_priors(args.priors))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    _emit(args, leakage_lines(rep), rep.to_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------
# compile
# ---------------------------------------------------------------------------


def cmd_compile(args) -> int:
    q = load_matrix(read_text(args.matrix), str(args.matrix))
    backend = _resolve_backend(args.backend, q.backend)
    if backend != q.backend:
        q = q.to_float()
    note = None
    try:
        circuit = decompose(q, args.tolerance)
    except NotRepresentableError as exc:
        if args.backend != "auto":
            raise UsageError(f"{exc}; rerun with --backend float") from None
        note = f"exact synthesis impossible ({exc}); used the float backend"
        q = q.to_float()
        circuit = decompose(q, args.tolerance)
    out_backend = EXACT if q.backend == EXACT else FLOAT
    text = dump_circuit(circuit, out_backend)
    residual = reconstruction_residual(circuit, q)
    lines = []
    if note:
        lines.append(f"note: {note}")
    if args.out:
        write_text(args.out, text)
        lines.append(f"circuit: {args.out}")
    else:
        lines.append(text.rstrip("\n"))
    lines.append(f"gates: {len(circuit.gates)}")
    lines.append(f"residual: {residual:.3e}")
    _emit(args, lines, {"gates": len(circuit.gates), "residual": residual,
                        "backend": out_backend, "circuit": str(args.out) if args.out else text,
                        "note": note})
    return EXIT_OK if residual < 1e-10 else EXIT_FAIL


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def run_trial(seed: int, trial: int, m: int, n: int, k: int, backend: str):
    rng = trial_rng(seed, trial)
    if backend == EXACT:
        mat = random_exact_circuit(rng, m, 2 * m).matrix(EXACT)
    else:
        mat = Matrix.from_numpy(random_orthogonal(rng, m))
    cols = rng.permutation(m)[:k]
    book = make_codebook([mat.column(int(c)) for c in cols], DEFAULT_TOL)
    perm = [int(c) + 1 for c in rng.permutation(m)]
    kept_sets = [perm[:n], perm[n:]] if n < m else [perm]
    parts = ShareSplit.from_kept(m, kept_sets)
    failures = 0
    recovered = recombine(split(book, parts))
    for mu in range(k):
        try:
            if decode(recovered[mu], book) != mu or not recovered[mu].equals(encode(mu, book)):
                failures += 1
        except AmbiguousStateError:
            failures += 1
    rep = analyze_leakage(book, parts)
    return failures, rep


def cmd_simulate(args) -> int:
    m, n, k, trials = args.dim, args.keep, args.messages, args.trials
    if not (m >= 1 and 1 <= n <= m and 2 <= k <= m and trials >= 1):
        raise UsageError("need 1 <= keep <= dim, 2 <= messages <= dim, trials >= 1")
    backend = EXACT if args.backend == "auto" else args.backend
    seed = DEFAULT_SEED if args.seed is None else args.seed
    if not 0 <= seed < 2**64:
        raise UsageError("--seed must be an unsigned 64-bit integer")
    failures = 0
    probs: list[float] = []
    flags: dict[str, int] = {}
    for t in range(trials):
        f, rep = run_trial(seed, t, m, n, k, backend)
        failures += f
        for p in rep.parties:
            probs.extend(p.probabilities.values())
            key = f"party{p.party}:{p.flag.value}"
            flags[key] = flags.get(key, 0) + 1
    total = trials * k
    summary = {
        "backend": backend, "seed": seed, "dim": m, "keep": n, "messages": k, "trials": trials,
        "round_trips": total - failures, "failures": failures,
        "probability_min": min(probs), "probability_mean": statistics.fmean(probs),
        "probability_max": max(probs), "flags": dict(sorted(flags.items())),
    }
    lines = [
        f"simulate backend={backend} seed={seed} dim={m} keep={n} messages={k} trials={trials}",
        f"round trips: {total - failures}/{total}",
        f"failures: {failures}",
        f"leakage probability min {_fmt(min(probs))} mean {_fmt(summary['probability_mean'])} "
        f"max {_fmt(max(probs))}",
    ]
    lines += [f"flag {key} {count}" for key, count in sorted(flags.items())]
    _emit(args, lines, summary)
    return EXIT_FAIL if failures else EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--backend", choices=["auto", EXACT, FLOAT], default="auto",
                        help="arithmetic backend (auto: exact when the data allows)")
    common.add_argument("--tolerance", type=float, default=DEFAULT_TOL,
                        help="absolute tolerance for float comparisons")
    common.add_argument("--seed", type=int, default=None, help="64-bit seed for random runs")
    common.add_argument("--format", choices=["text", "structured"], default="text")

    p = argparse.ArgumentParser(prog="eutactic", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    vp = sub.add_parser("verify-paper", parents=[common], help="re-derive the worked example")
    vp.add_argument("--corrupt", action="store_true", help=argparse.SUPPRESS)
    vp.set_defaults(func=cmd_verify_paper)

    sp = sub.add_parser("star", help="eutactic star tools")
    ssub = sp.add_subparsers(dest="action", required=True)
    c = ssub.add_parser("check", parents=[common])
    c.add_argument("file")
    c.set_defaults(func=cmd_star_check)
    d = ssub.add_parser("dilate", parents=[common])
    d.add_argument("file")
    d.add_argument("--basis-out")
    d.add_argument("--projector-out")
    d.set_defaults(func=cmd_star_dilate)

    shp = sub.add_parser("share", help="secret-sharing protocol")
    shsub = shp.add_subparsers(dest="action", required=True)
    s = shsub.add_parser("split", parents=[common])
    s.add_argument("codebook")
    s.add_argument("split")
    s.add_argument("--out-dir", default=".")
    s.set_defaults(func=cmd_share_split)
    r = shsub.add_parser("recombine", parents=[common])
    r.add_argument("shares", nargs="+")
    r.add_argument("--out")
    r.set_defaults(func=cmd_share_recombine)
    lk = shsub.add_parser("leakage", parents=[common])
    lk.add_argument("codebook")
    lk.add_argument("split")
    lk.add_argument("--priors", help="comma-separated message priors (default uniform)")
    lk.set_defaults(func=cmd_share_leakage)

    cp = sub.add_parser("compile", parents=[common], help="synthesize a rotation circuit")
    cp.add_argument("matrix")
    cp.add_argument("--out")
    cp.set_defaults(func=cmd_compile)

    sm = sub.add_parser("simulate", parents=[common], help="randomized protocol round trips")
    sm.add_argument("--dim", type=int, required=True)
    sm.add_argument("--keep", type=int, required=True)
    sm.add_argument("--messages", type=int, required=True)
    sm.add_argument("--trials", type=int, default=100)
    sm.set_defaults(func=cmd_simulate)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    if getattr(args, "tolerance", 1.0) <= 0:
        print("error: --tolerance must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except IncompleteShareError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE
    except (ParseError, UsageError, NotParsevalError, NotOrthogonalError, CodebookError,
            BackendError, NotRepresentableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
