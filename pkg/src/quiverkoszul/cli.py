"""Command-line front end.

    quiverkoszul resolve FILE [--maxdeg N]
    quiverkoszul comult  FILE --n N --r R
    quiverkoszul hh      FILE --n N [--weight W]
    quiverkoszul cup     FILE --eta ETA.json --theta THETA.json [--reduce]
    quiverkoszul dual    FILE --m M --n N
    quiverkoszul center  FILE [--maxdeg N]
    quiverkoszul verify  FILE [--maxdeg N]

FILE is a presentation file or ``fixture:NAME`` for a built-in example.
Results go to stdout as JSON; diagnostics go to stderr.  Exit status is 0 on
success, 2 for invalid input and 3 when the algebra fails the Koszul checks.
"""
import argparse
import json
import sys

from . import fixtures
from .algebra import Algebra, TruncationError
from .comult import (Comultiplication, verify_coassociativity, verify_reconstruction,
                     verify_zero_pattern)
from .hochschild import Hochschild, InfiniteDimensionalWeightRange, NotCocycle
from .koszul_dual import KoszulDual
from .presentation import PresentationError, read
from .resolution import (ExactnessFailure, KoszulAssumptionViolated, compute_levels,
                         verify_exactness)

EXIT_OK, EXIT_INVALID, EXIT_NOT_KOSZUL = 0, 2, 3


class UsageError(ValueError):
    pass


def _load(args, extra=0):
    if args.file.startswith("fixture:"):
        try:
            pres = fixtures.load(args.file.split(":", 1)[1])
        except KeyError as exc:
            raise UsageError(exc.args[0]) from None
    else:
        try:
            pres = read(args.file)
        except OSError as exc:
            raise UsageError(f"cannot read {args.file}: {exc.strerror}") from None
    if args.maxdeg is not None:
        pres.maxdeg = args.maxdeg
    if pres.maxdeg < 2:
        raise UsageError("maxdeg must be at least 2")
    pres.maxdeg += extra
    largest = largest_block(pres.quiver, pres.maxdeg)
    if largest > args.size_guard:
        raise UsageError(f"V^{pres.maxdeg} has a block of {largest} paths, over the size guard "
                         f"{args.size_guard}; lower --maxdeg or raise --size-guard")
    return Algebra(pres)


def largest_block(quiver, n):
    """Largest number of length-n paths between two fixed vertices."""
    size = len(quiver.vertices)
    adj = [[0] * size for _ in range(size)]
    for a in quiver.arrows:
        adj[a.source][a.target] += 1
    power = [[int(i == j) for j in range(size)] for i in range(size)]
    for _ in range(n):
        power = [[sum(power[i][k] * adj[k][j] for k in range(size)) for j in range(size)]
                 for i in range(size)]
    return max((max(row) for row in power), default=0)


def _koszul_session(args, extra=0):
    alg = _load(args, extra)
    res = compute_levels(alg)
    comult = Comultiplication(res)
    verify_exactness(res, comult)
    return Hochschild(res, comult)


def _degree(n, top):
    if n < 0 or n > top:
        raise UsageError(f"degree {n} outside 0..{top} (raise --maxdeg)")


def _term_json(alg, terms):
    fmt = alg.field.format
    name = alg.quiver.path_name
    return [{"path": name(p), "coeff": fmt(c)} for p, c in sorted(terms.items(), key=lambda t: t[0].sort_key())]


def cmd_resolve(args):
    alg = _load(args)
    res = compute_levels(alg)
    verts = alg.quiver.vertices
    levels = []
    for level in res.levels:
        levels.append([
            {"source": verts[level.source(i)], "target": verts[level.target(i)], "terms": _term_json(alg, f.terms)}
            for i, f in enumerate(level.generators)
        ])
    return {"t": res.t(), "generators": levels}


def cmd_comult(args):
    alg = _load(args)
    _degree(args.n, alg.maxdeg)
    if not 0 <= args.r <= args.n:
        raise UsageError(f"--r must lie in 0..{args.n}")
    res = compute_levels(alg)
    return Comultiplication(res).table(args.n, args.r).to_json(alg.field)


def cmd_hh(args):
    hh = _koszul_session(args)
    _degree(args.n, hh.resolution.maxdeg - 1)
    out = hh.cohomology_dims(args.n, args.weight)
    if args.weight is None:
        out["by_weight"] = [hh.cohomology_dims(args.n, w) for w in hh.weights()]
    return out


def _read_cochain(hh, path, default_degree):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path}: invalid JSON ({exc})") from None
    degree = default_degree
    if isinstance(data, dict):
        degree = data.get("degree", degree)
        data = data.get("values")
    if not isinstance(data, list) or not all(isinstance(v, list) for v in data):
        raise UsageError(f"{path}: expected a list of per-generator term lists")
    _degree(degree, hh.resolution.maxdeg)
    try:
        return hh.cochain_from_json(degree, data)
    except (ValueError, TypeError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def cmd_cup(args):
    hh = _koszul_session(args)
    eta = _read_cochain(hh, args.eta, args.eta_degree)
    theta = _read_cochain(hh, args.theta, args.theta_degree)
    _degree(eta.degree + theta.degree, hh.resolution.maxdeg - (1 if args.reduce else 0))
    prod = hh.cup(eta, theta)
    out = {"degree": prod.degree, "representative": prod.to_json()}
    if args.reduce:
        try:
            cls = hh.reduce_class(prod)
        except NotCocycle as exc:
            raise UsageError(f"cannot reduce: {exc} (are both inputs cocycles?)") from None
        fmt = hh.algebra.field.format
        out["class"] = "zero" if cls.is_zero else {
            str(w): [fmt(x) for x in coords] for w, coords in cls.components}
    return out


def cmd_dual(args):
    hh = _koszul_session(args)
    _degree(args.m + args.n, hh.resolution.maxdeg)
    if args.m < 0 or args.n < 0:
        raise UsageError("degrees must be non-negative")
    return KoszulDual(hh).structure_json(args.m, args.n)


def cmd_center(args):
    # Z_gr in degree n needs level n+1
    hh = _koszul_session(args, extra=1)
    dual = KoszulDual(hh)
    top = hh.resolution.maxdeg - 1
    degrees = [dual.centre_json(n) for n in range(top + 1)]
    return {"dims": [d["dim"] for d in degrees], "degrees": degrees}


def _plain(x):
    """JSON-friendly copy of a witness: containers kept, scalars other than ints stringified."""
    if x is None or isinstance(x, (bool, int, str)):
        return x
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    return str(x)


def cmd_verify(args):
    alg = _load(args)
    res = compute_levels(alg)
    comult = Comultiplication(res)
    N = res.maxdeg
    checks = []

    def record(name, witness):
        checks.append({"check": name, "ok": witness is None, "witness": _plain(witness)})

    try:
        verify_exactness(res, comult)
        record("exactness", None)
    except ExactnessFailure as exc:
        record("exactness", {"n": exc.n, "d": exc.d, "homology": exc.homology})
        return {"ok": False, "checks": checks}, EXIT_NOT_KOSZUL
    hh = Hochschild(res, comult)
    record("delta_squared_zero", hh.verify_complex(N))
    witness = None
    for n in range(N + 1):
        for r in range(n + 1):
            t = comult.table(n, r)
            witness = witness or verify_reconstruction(t, res) or verify_zero_pattern(t, res)
    record("reconstruction", witness)
    witness = None
    for n in range(N + 1):
        for r in range(n + 1):
            for s in range(n - r + 1):
                witness = witness or verify_coassociativity(comult, n, r, s)
    record("coassociativity", witness)
    dual = KoszulDual(hh)
    witness = None
    for n in range(N):
        for r in range(N - n):
            w = dual.verify_lifting_identity(n, r)
            if w is not None and witness is None:
                witness = (n, r) + w
    record("lifting_identity", witness)
    record("dual_associativity", dual.verify_associativity(N))
    ok = all(c["ok"] for c in checks)
    return {"ok": ok, "t": res.t(), "checks": checks}, EXIT_OK if ok else EXIT_NOT_KOSZUL


COMMANDS = {
    "resolve": cmd_resolve,
    "comult": cmd_comult,
    "hh": cmd_hh,
    "cup": cmd_cup,
    "dual": cmd_dual,
    "center": cmd_center,
    "verify": cmd_verify,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="quiverkoszul", description="Koszul algebra computations on quivers.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_):
        p = sub.add_parser(name, help=help_)
        p.add_argument("file", help="presentation file, or fixture:NAME")
        p.add_argument("--maxdeg", type=int, help="truncation degree (default: the file's maxdeg, else 5)")
        p.add_argument("--size-guard", type=int, default=20000,
                       help="refuse when a path block of V^maxdeg has more columns than this")
        return p

    add("resolve", "bases f^n_i of the linear resolution")
    p = add("comult", "comultiplication constants c_pq(n,i,r)")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p = add("hh", "Hochschild cohomology dimensions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--weight", type=int)
    p = add("cup", "cup product of two cochains")
    p.add_argument("--eta", required=True, help="JSON cochain file")
    p.add_argument("--theta", required=True, help="JSON cochain file")
    p.add_argument("--eta-degree", type=int, default=1)
    p.add_argument("--theta-degree", type=int, default=1)
    p.add_argument("--reduce", action="store_true", help="also reduce the product to its class")
    p = add("dual", "structure constants of the Koszul dual")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    add("center", "graded centre of the Koszul dual, degrees 0..maxdeg")
    add("verify", "run every consistency check and report")
    return parser


def run(argv=None, stdout=None, stderr=None):
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_INVALID
    try:
        result = COMMANDS[args.command](args)
    except (UsageError, PresentationError, TruncationError, InfiniteDimensionalWeightRange) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_INVALID
    except ExactnessFailure as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_NOT_KOSZUL
    except KoszulAssumptionViolated as exc:
        print(f"error: Koszul assumption violated: {exc}", file=stderr)
        return EXIT_NOT_KOSZUL
    code = EXIT_OK
    if isinstance(result, tuple):
        result, code = result
    json.dump(result, stdout, indent=2, ensure_ascii=False)
    stdout.write("\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
