"""Command line interface: ``rlr <command> [--input FILE | --example NAME] ...``.

Exit codes: 0 all checks pass, 1 a check failed, 2 input error, 3 budget
exceeded.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from . import registry
from .algebra import (
    DerivationSpace,
    check_commutative_associative,
    check_restricted_lie,
    check_rlr,
    compute_derivations,
    extend_pmap,
    pth_power_derivation,
)
from .cochains import CharacteristicError, LRComplex, LRValidationError
from .cohomology import (
    PCochain2,
    certify_complexes,
    compute_Z2_B2_H2,
    lr_cochain,
    polarized_table,
    verify_p_cocycle,
    verify_trivial_p_cocycle,
)
from .deformation import (
    DeformationError,
    TruncatedDeformation,
    check_deformation,
    extend,
    is_trivial_infinitesimal,
    obstruction_identities,
    obstructions,
    transport,
)
from .fileformat import AlgebraFile, InputError, load, serialize
from .gfp import ModulusError
from .report import DEFAULT_BUDGET, BudgetExceeded, Report, emit

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_BUDGET = 0, 1, 2, 3


def _label_matrix(D: np.ndarray) -> str:
    """``D`` as a sum of ``e_k (x) e_j*`` terms (``D[k, j]`` = coefficient of e_k in D(e_j))."""
    terms = []
    for k, j in zip(*np.nonzero(D)):
        c = int(D[k, j])
        terms.append(f"{'' if c == 1 else f'{c}*'}e{k + 1}(x)e{j + 1}*")
    return " + ".join(terms) if terms else "0"


def _require(f: AlgebraFile, *sections: str):
    for s in sections:
        if s == "rlr":
            if not f.has_rlr:
                raise InputError("this command needs A, L, action and anchor sections")
        elif getattr(f, s) is None:
            raise InputError(f"this command needs a '{s}' section")


def verify_report(f: AlgebraFile, budget: int) -> Report:
    rep = Report("verify")
    if f.has_rlr:
        rep.extend(check_rlr(f.rlr(), budget))
        return rep
    if f.A is not None:
        rep.extend(check_commutative_associative(f.A))
    if f.L is not None:
        if f.L.pmap_on_basis is None:
            rep.add("L has a p-map", False, note="no pmap table given")
        else:
            rep.extend(check_restricted_lie(f.L, budget))
    if f.A is None and f.L is None:
        raise InputError("nothing to verify: neither A nor L is present")
    return rep


def cmd_verify(f, args) -> Report:
    return verify_report(f, args.budget)


def cmd_derivations(f, args) -> Report:
    _require(f, "A")
    rep = Report("derivations")
    rep.extend(check_commutative_associative(f.A))
    basis = compute_derivations(f.A).vectors.reshape(-1, f.A.dim, f.A.dim)
    rep.values["Der_dim"] = int(basis.shape[0])
    rep.values["Der_basis"] = [_label_matrix(D) for D in basis]
    rep.values["Der_basis_matrices"] = basis.tolist()
    der = DerivationSpace(f.A)
    rep.add("Der(A) closed under D -> D^p", all(der.contains(pth_power_derivation(f.A, D)) for D in basis))
    return rep


def cmd_pmap_extend(f, args) -> Report:
    _require(f, "L")
    L = f.L
    if L.pmap_on_basis is None:
        raise InputError("L.pmap: basis images are required for pmap-extend")
    rep = Report("pmap-extend")
    try:
        ext = extend_pmap(L, L.pmap_on_basis)
    except ValueError as exc:
        rep.add("Jacobson hypothesis: (ad e_j)^p = ad f_j", False, note=str(exc))
        return rep
    rep.add("Jacobson hypothesis: (ad e_j)^p = ad f_j", True)
    rep.extend(check_restricted_lie(ext, args.budget))
    rep.values["pmap_on_basis"] = ext.pmap_on_basis.tolist()
    return rep


def cmd_cohomology(f, args) -> Report:
    _require(f, "rlr")
    R = f.rlr()
    if R.p != 2:
        raise CharacteristicError("cohomology spaces are computed in characteristic 2; use verify-cocycle for p >= 3")
    rep = Report("cohomology")
    res = compute_Z2_B2_H2(R, args.budget)
    rep.values.update(res.values())
    rep.add("B2_LR is contained in Z2_LR", all(v in res.z_basis for v in res.b_basis.vectors))
    rep.add("B2_res is contained in Z2_res", all(v in res.z_res for v in res.b_res.vectors))
    if args.degree and args.degree >= 1:
        rep.extend(certify_complexes(R, args.degree, args.budget))
    if f.cochain is not None:
        lr = LRComplex(R, args.budget)
        c = lr_cochain(lr, f.cochain)
        rep.add("cochain lies in C2_LR", not lr.violations(c), lr.violations(c) or None)
        rep.values["cochain_in_Z2_LR"] = bool(lr.to_vector(c) in res.z_basis)
        rep.values["cochain_in_B2_LR"] = bool(lr.to_vector(c) in res.b_basis)
    return rep


def _p_cochain(f: AlgebraFile) -> PCochain2:
    c = f.cochain
    if f.p == 2:
        return PCochain2(c.mu, polarized_table(f.L, c.mu, c.omega), c.theta)
    return PCochain2(c.mu, c.omega, c.theta)


def cmd_verify_cocycle(f, args) -> Report:
    _require(f, "rlr", "cochain")
    return verify_p_cocycle(f.rlr(), _p_cochain(f), args.budget)


def _deformation(f: AlgebraFile, order: int | None) -> TruncatedDeformation:
    if f.deformation is None:
        return TruncatedDeformation.undeformed(f.rlr(), order if order is not None else 1)
    d = f.deformation
    if order is not None:
        if order > d.order:
            raise InputError(f"--order {order} exceeds the deformation order {d.order}")
        d = d.truncate(order)
    return d


def cmd_deform_check(f, args) -> Report:
    _require(f, "rlr")
    return check_deformation(f.rlr(), _deformation(f, args.order), args.budget)


def cmd_obstruct(f, args) -> Report:
    _require(f, "rlr")
    R = f.rlr()
    d = _deformation(f, args.order)
    rep = Report("obstruct")
    check = check_deformation(R, d, args.budget)
    if not check.passed:
        rep.extend(check)
        return rep
    ob = obstructions(R, d, args.budget)
    rep.values["order"] = d.order
    rep.values["obstructions_vanish"] = ob.is_zero()
    ext = extend(d, args.budget)
    rep.values["extendable"] = ext.deformation is not None
    if ext.deformation is not None:
        rep.values["extension_solution_dim"] = ext.solution_dim
        rep.extend(obstruction_identities(R, d, ext.deformation, args.budget))
    return rep


def cmd_transport(f, args) -> Report:
    _require(f, "rlr", "automorphism")
    R = f.rlr()
    d = f.deformation if f.deformation is not None else TruncatedDeformation.undeformed(R, f.automorphism.order)
    phi = f.automorphism
    out = transport(d, phi)
    rep = Report("transport")
    rep.extend(check_deformation(R, out, args.budget), prefix="transported: ")
    rep.add("transport by phi then phi^-1 is the identity", transport(out, phi.inverse()) == d)
    rep.values["mu"] = out.mu.tolist()
    rep.values["omega"] = out.omega.tolist()
    rep.values["rho"] = out.rho.tolist()
    if R.p == 2 and out.order >= 1:
        rep.values["infinitesimal_in_B2_LR"] = is_trivial_infinitesimal(R, out, args.budget)
    if args.output:
        g = AlgebraFile(f.p, f.name, f.A, f.L, f.act, f.anchor, deformation=out, meta=dict(f.meta))
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(serialize(g))
    return rep


def cmd_trivial_test(f, args) -> Report:
    _require(f, "rlr")
    R = f.rlr()
    rep = Report("trivial-test")
    if R.p == 2:
        if f.deformation is not None:
            d = f.deformation
        else:
            _require(f, "cochain")
            d = TruncatedDeformation.undeformed(R, 1).with_coefficient(1, f.cochain.mu, f.cochain.omega, f.cochain.theta)
        rep.values["trivial"] = is_trivial_infinitesimal(R, d, args.budget)
        return rep
    _require(f, "cochain", "candidate")
    semilinear = args.c1_rule == "semilinear"
    rep.values["trivial"] = verify_trivial_p_cocycle(R, _p_cochain(f), f.candidate, semilinear, args.budget)
    rep.values["c1_rule"] = args.c1_rule
    return rep


COMMANDS = {
    "verify": cmd_verify,
    "derivations": cmd_derivations,
    "pmap-extend": cmd_pmap_extend,
    "cohomology": cmd_cohomology,
    "verify-cocycle": cmd_verify_cocycle,
    "deform-check": cmd_deform_check,
    "obstruct": cmd_obstruct,
    "transport": cmd_transport,
    "trivial-test": cmd_trivial_test,
}


def _add_common(sp: argparse.ArgumentParser):
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--input", "-i", metavar="FILE", help="algebra file (JSON)")
    src.add_argument("--example", "-e", metavar="NAME", help="built-in example name")
    sp.add_argument("--format", choices=["text", "json"], default="text")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="max evaluations per exhaustive quantifier")
    sp.add_argument("--order", type=int, default=None)
    sp.add_argument("--degree", type=int, default=0, help="also certify d o d = 0 up to this degree")
    sp.add_argument("--lambda1", type=int, default=1)
    sp.add_argument("--lambda2", type=int, default=0)
    sp.add_argument("--c1-rule", choices=["semilinear", "linear"], default="semilinear")
    sp.add_argument("--output", "-o", metavar="FILE", default=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rlr", description="Exact GF(p) computations for restricted Lie-Rinehart algebras")
    sub = parser.add_subparsers(dest="command", required=True)
    for name in COMMANDS:
        _add_common(sub.add_parser(name))
    ex = sub.add_parser("examples", help="list or run built-in examples")
    ex_sub = ex.add_subparsers(dest="action", required=True)
    ls = ex_sub.add_parser("list")
    ls.add_argument("--format", choices=["text", "json"], default="text")
    run = ex_sub.add_parser("run")
    run.add_argument("name")
    run.add_argument("--cohomology", action="store_true")
    run.add_argument("--format", choices=["text", "json"], default="text")
    run.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    run.add_argument("--degree", type=int, default=0)
    run.add_argument("--lambda1", type=int, default=1)
    run.add_argument("--lambda2", type=int, default=0)
    return parser


def _load(args) -> tuple[AlgebraFile, bool]:
    if args.input:
        return load(args.input), False
    if args.example:
        return registry.get(args.example, args.lambda1, args.lambda2), True
    raise InputError("give --input FILE or --example NAME")


def run_command(args) -> Report:
    if args.command == "examples":
        if args.action == "list":
            rep = Report("examples list")
            rep.values["examples"] = {n: e.description for n, e in registry.REGISTRY.items()}
            return rep
        f = registry.get(args.name, args.lambda1, args.lambda2)
        rep = verify_report(f, args.budget)
        rep.command = f"examples run {f.name}"
        if f.A is not None and f.L is None:
            basis = compute_derivations(f.A).vectors.reshape(-1, f.A.dim, f.A.dim)
            rep.values["Der_dim"] = int(basis.shape[0])
            rep.values["Der_basis"] = [_label_matrix(D) for D in basis]
        if args.cohomology and rep.passed:
            args.cochain = None
            rep.extend(cmd_cohomology(f, args))
        return rep
    f, builtin = _load(args)
    if builtin and args.command != "verify":
        gate = verify_report(f, args.budget)
        if not gate.passed:
            gate.note("built-in example failed verification; command not run")
            return gate
    return COMMANDS[args.command](f, args)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    fmt = getattr(args, "format", "text")
    try:
        rep = run_command(args)
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (InputError, KeyError, ModulusError, CharacteristicError, LRValidationError, DeformationError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"input error: {msg}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(emit(rep, fmt))
    return EXIT_OK if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
