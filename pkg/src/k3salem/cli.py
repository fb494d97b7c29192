"""Command-line interface; every command prints one JSON envelope."""

from __future__ import annotations

import argparse
import json
import sys

from k3salem import k3class, pell, sweeps
from k3salem.isometry import SpectralRadius
from k3salem.pell import is_square
from k3salem.qform import (
    EvenLattice,
    class_inventory,
    in_L_prime,
    isotropic_vector,
    minus_two_vector,
)


class UsageError(Exception):
    pass


def _ints(text: str, what: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"{what}: expected comma-separated integers, got {text!r}") from None
    if len(vals) != 3:
        raise UsageError(f"{what}: expected three integers, got {len(vals)}")
    return vals


def _eps(value: int) -> int:
    if value not in (1, -1):
        raise UsageError(f"--eps must be 1 or -1, got {value}")
    return value


def _lattice_disc(disc: int) -> int:
    """D from a lattice discriminant disc(L) = -D, entered negative."""
    if disc >= 0:
        raise UsageError(f"lattice discriminant {disc} must be negative (signature (1,1) means disc(L) = -D < 0)")
    D = -disc
    if D % 4 not in (0, 1):
        raise UsageError(f"D = {D} is 2 or 3 mod 4: no even lattice has discriminant {disc}")
    if is_square(D):
        raise UsageError(f"D = {D} is a perfect square: reduction theory does not apply")
    return D


def _pell_disc(value: int) -> int:
    D = abs(value)
    if D % 4 not in (0, 1):
        raise UsageError(f"D = {D} is 2 or 3 mod 4: not a discriminant")
    if D == 0 or is_square(D):
        raise UsageError(f"D = {D} is a perfect square: the Pell equation has no nontrivial solution")
    return D


def _sol(s: pell.PellSolution | None):
    if s is None:
        return None
    return {"u": s.u, "w": s.w, "D": s.D, "norm": s.norm}


def cmd_pell(args):
    D = _pell_disc(args.disc)
    out = {"D": D, "fundamental_unit": _sol(pell.fundamental_unit_pm4(D)),
           "plus4": _sol(pell.solve_pell4(D))}
    if args.neg:
        out["minus4"] = _sol(pell.solve_pell_neg4(D))
    return out, ["Pell equation u^2 - D v^2 = 4 parametrises SO+(L)"]


def cmd_cf(args):
    N = args.radicand
    if N <= 2 or is_square(N):
        raise UsageError(f"radicand {N} must be a non-square integer > 2")
    cf = pell.cf_sqrt(N)
    parity = pell.period_parity(N)
    mollin = pell.mollin_criterion(N)
    return ({"radicand": N, "a0": cf.a0, "period": list(cf.period), "period_length": cf.period_length,
             "parity": parity, "mollin_criterion": mollin, "consistent": mollin == (parity == "even")},
            ["period parity criterion via a x^2 - b y^2 = +-1, +-2"])


def cmd_classes(args):
    D = _lattice_disc(args.disc)
    return class_inventory(D).to_json(), ["narrow class number via reduced cycles"]


def _parse_lattice(args) -> EvenLattice:
    if args.gram is not None:
        g11, g12, g22 = _ints(args.gram, "--gram")
        if g11 % 2 or g22 % 2:
            raise UsageError(f"--gram {args.gram}: odd diagonal entry, not an even lattice")
        return EvenLattice(g11 // 2, g12, g22 // 2)
    a, b, c = _ints(args.form, "--form")
    return EvenLattice(a, b, c)


def cmd_lprime(args):
    L = _parse_lattice(args)
    if L.D <= 0:
        raise UsageError(f"lattice {L} has D = {L.D} <= 0: not of signature (1,1)")
    out = {**L.to_json(), "D": L.D, "in_L_prime": in_L_prime(L)}
    if is_square(L.D):
        out["witness"] = {"norm": 0, "vector": list(isotropic_vector(L))}
    elif not out["in_L_prime"]:
        out["witness"] = {"norm": -2, "vector": list(minus_two_vector(L))}
    return out, ["no vectors of norm 0 or -2"]


def cmd_trace(args):
    eps = _eps(args.eps)
    if args.u <= 2:
        raise UsageError(f"--u must exceed 2, got {args.u}")
    return k3class.classify_trace(args.u, eps).to_json(), ["traces alpha^2 - 2 eps with alpha in A_eps"]


def _admissible(alpha: int, eps: int) -> None:
    if not k3class.in_A_eps(eps, alpha):
        raise UsageError(f"alpha = {alpha} is not in the admissible set for eps = {eps}")


def cmd_witness(args):
    eps = _eps(args.eps)
    _admissible(args.alpha, eps)
    return k3class.witness(eps, args.alpha).to_json(), ["traces alpha^2 - 2 eps with alpha in A_eps", "witness lattices"]


def cmd_fixed_points(args):
    eps = _eps(args.eps)
    _admissible(args.alpha, eps)
    u = args.alpha ** 2 - 2 * eps
    radius = SpectralRadius.from_trace(u)
    return ({"alpha": args.alpha, "eps": eps, "trace": u,
             "fixed_point_count": k3class.fixed_point_count(eps, args.alpha),
             "spectral_radius": str(radius), "spectral_radius_decimal": str(radius.decimal(args.prec)),
             "entropy_decimal": str(radius.entropy(args.prec))},
            ["topological Lefschetz fixed point formula"])


def cmd_oguiso(args):
    return k3class.oguiso_classification(), ["Cayley-Oguiso automorphism"]


def cmd_verify(args):
    if not args.sweep:
        raise UsageError("verify needs --sweep")
    results = sweeps.run_all(args.dmax, args.alphamax, args.biromax)
    return ({"passed": all(r.passed for r in results), "sweeps": [r.to_json() for r in results]},
            ["traces alpha^2 - 2 eps with alpha in A_eps", "class number one for k^2 + 4"])


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="k3salem", description=__doc__)
    p.add_argument("--pretty", action="store_true", help="indented JSON")
    # also accepted after the subcommand; SUPPRESS keeps the top-level value
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS, help="indented JSON")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("pell", help="solve u^2 - D w^2 = 4 (and = -4 with --neg)", parents=[common])
    s.add_argument("--disc", type=int, required=True)
    s.add_argument("--neg", action="store_true")
    s.set_defaults(func=cmd_pell)

    s = sub.add_parser("cf", help="continued fraction of sqrt(N)", parents=[common])
    s.add_argument("--radicand", type=int, required=True)
    s.set_defaults(func=cmd_cf)

    s = sub.add_parser("classes", help="lattice classes of discriminant -D (enter it negative)", parents=[common])
    s.add_argument("--disc", type=int, required=True)
    s.set_defaults(func=cmd_classes)

    s = sub.add_parser("lprime", help="test for vectors of norm 0 or -2", parents=[common])
    g = s.add_mutually_exclusive_group(required=True)
    g.add_argument("--gram", help="2a,b,2c")
    g.add_argument("--form", help="a,b,c")
    s.set_defaults(func=cmd_lprime)

    s = sub.add_parser("trace", help="lattice classes realising trace U", parents=[common])
    s.add_argument("--u", type=int, required=True)
    s.add_argument("--eps", type=int, required=True)
    s.set_defaults(func=cmd_trace)

    for name, func, text in (("witness", cmd_witness, "a lattice and isometry for an admissible alpha"),
                             ("fixed-points", cmd_fixed_points, "fixed point count, spectral radius, entropy")):
        s = sub.add_parser(name, help=text, parents=[common])
        s.add_argument("--alpha", type=int, required=True)
        s.add_argument("--eps", type=int, required=True)
        if name == "fixed-points":
            s.add_argument("--prec", type=int, default=30)
        s.set_defaults(func=func)

    s = sub.add_parser("oguiso", help="the fixed-point-free case", parents=[common])
    s.set_defaults(func=cmd_oguiso)

    s = sub.add_parser("verify", help="run the verification sweeps", parents=[common])
    s.add_argument("--sweep", action="store_true")
    s.add_argument("--dmax", type=int, default=2000)
    s.add_argument("--alphamax", type=int, default=50)
    s.add_argument("--biromax", type=int, default=99)
    s.set_defaults(func=cmd_verify)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    inputs = {k: v for k, v in vars(args).items() if k not in ("func", "pretty", "command")}
    try:
        result, citations = args.func(args)
    except (UsageError, ValueError, k3class.ClassificationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    envelope = {"command": args.command, "inputs": inputs, "result": result, "citations": citations}
    print(json.dumps(envelope, indent=2 if args.pretty else None, sort_keys=False))
    if args.command == "verify" and not result["passed"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
