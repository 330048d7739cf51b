"""Command-line interface.

Exit status: 0 on success, 1 when a computation raises (the error class
name is printed), 2 for usage errors.  ``--json`` output is canonical:
sorted keys, two-space indent, no floats.
"""

import argparse
import json
import os
import sys

from . import catalog as cat
from .abelian import format_group, parse_factors
from .cohomology import (cohomology, module_from_json,
                         reduce_unit_coefficients, trivial_module)
from .errors import BrpicError
from .fieldtable import COMPLEX, REALS, finite_field
from .fusion import (aut_tensor_id, algebra_profile, fusion_from_json,
                     invertible_objects, profile_twist, twist_obstruction,
                     validate_fusion_ring)
from .galois import (embeddings_from_json, factor_orbit_map,
                     faithfulness_check, grouped_idempotents,
                     lagrange_idempotents, scenario_from_json,
                     tensor_unit_decomposition)
from .groups import NAMED_GROUPS, group_from_json, named_group
from .seqkit import (classify_vecR_extensions,
                     sequence_from_json, solve_brpic, verify_exactness)


class UsageError(Exception):
    pass


def dumps(obj):
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        from .errors import SchemaError
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None


def load_group(spec):
    if spec in NAMED_GROUPS:
        return named_group(spec)
    if not os.path.exists(spec):
        raise UsageError(f"{spec!r} is neither a group file nor one of {sorted(NAMED_GROUPS)}")
    return group_from_json(_read_json(spec))[0]


def load_module(spec, group, degree):
    """File, or one of Z, Z/n, R^x, C^x, F<q>^x (unit groups with trivial action)."""
    s = spec.strip()
    if s == "Z":
        return trivial_module(group, 1, (), "Z")
    if s.startswith("Z/") and s[2:].isdigit():
        return trivial_module(group, 0, (int(s[2:]),), s)
    units = {"R^x": REALS, "C^x": COMPLEX}
    if s in units or (s.startswith("F") and s.endswith("^x") and s[1:-2].isdigit()):
        fld = units.get(s) or finite_field(int(s[1:-2]))
        if degree < 1:
            raise UsageError("unit coefficients need degree >= 1")
        return reduce_unit_coefficients(fld, degree, group)
    if not os.path.exists(s):
        raise UsageError(f"{spec!r} is neither a module file nor Z, Z/n, R^x, C^x, F<q>^x")
    return module_from_json(_read_json(s), group)


def _factors(text):
    try:
        return parse_factors(text)
    except ValueError:
        raise UsageError(f"cannot parse group {text!r}; use e.g. 2,2 or trivial") from None


# -- subcommands -----------------------------------------------------------

def cmd_cohomology(args):
    if args.degree < 0:
        raise UsageError("degree must be nonnegative")
    g = load_group(args.group)
    m = load_module(args.module, g, args.degree)
    h = cohomology(g, m, args.degree)
    return h.to_json(), str(h)


def cmd_galois_faithful(args):
    sc = scenario_from_json(_read_json(args.scenario))
    emb = embeddings_from_json(_read_json(args.embeddings), sc)
    rep = faithfulness_check(sc, emb, strict=not args.lenient)
    if not rep.H_is_group:
        text = f"H is not a group: witness {list(rep.witness)}"
    elif rep.faithful:
        text = "faithful; ΩZ = K"
    else:
        text = f"not faithful; ΩZ degree {rep.fixed_field_index} over K"
    return rep.to_json(), text


def cmd_galois_idempotents(args):
    sc = scenario_from_json(_read_json(args.scenario))
    ps = lagrange_idempotents(sc)
    Ps = grouped_idempotents(sc)
    J = factor_orbit_map(sc)
    degs = tensor_unit_decomposition(sc)
    lines = [f"J = {J}", f"factor degrees = {degs}"]
    lines += [f"p_{i} = {p}" for i, p in enumerate(ps, start=1)]
    lines += [f"P_{j} = {P}" for j, P in enumerate(Ps, start=1)]
    lines.append("verified: p_i(theta_k) = delta_ik, P_j(theta_k) = delta_j,J(k), "
                 "sums equal 1, P_j coefficients fixed by G")
    data = {"J": J, "factor_degrees": degs, "p": [p.to_json() for p in ps],
            "P": [P.to_json() for P in Ps], "verified": True}
    return data, "\n".join(lines)


def _load_fusion(path):
    return validate_fusion_ring(fusion_from_json(_read_json(path)))


def cmd_fusion(args):
    data = _load_fusion(args.data)
    if args.action == "validate":
        return {"valid": True, "rank": data.rank}, f"valid fusion ring of rank {data.rank}"
    if args.action == "profile":
        prof = algebra_profile(data)
        out = {"profile": str(prof)}
        text = str(prof)
        if args.twist:
            tw = profile_twist(prof, args.twist, data.base_field)
            obstructed = twist_obstruction(data, args.twist)
            out.update(twist=args.twist, twisted=str(tw), obstructed=obstructed)
            text += (f"\n{prof} . [{args.twist}] = {tw}\n"
                     + ("obstructed: the class acts nontrivially" if obstructed
                        else "inconclusive: profile unchanged"))
        return out, text
    if args.action == "inv":
        inv = invertible_objects(data)
        return inv.to_json(), f"{{{', '.join(inv.labels)}}} = {format_group(inv.invariant_factors)}"
    factors = aut_tensor_id(data)
    return {"invariant_factors": factors}, format_group(factors)


def cmd_seq_solve(args):
    res = solve_brpic(_factors(args.inv), _factors(args.aut_t), _factors(args.br),
                      _factors(args.aut_br), args.h3_trivial)
    return res.to_json(), str(res)


def cmd_seq_verify(args):
    rep = verify_exactness(sequence_from_json(_read_json(args.data)))
    lines = [f"{'ok  ' if c.passed else 'FAIL'} {c.name}"
             + ("" if c.passed else f": {c.detail} {list(c.witness)}") for c in rep.checks]
    lines.append("exact" if rep.exact else "not exact")
    return rep.to_json(), "\n".join(lines)


def cmd_classify_vecr(args):
    recs = classify_vecR_extensions(load_group(args.group))
    lines = [f"{len(recs)} extension(s)"]
    for r in recs:
        lines.append(f"f = {list(r.f)}  phi = {list(r.phi)}  profile {algebra_profile(r.fusion)}")
    return {"count": len(recs), "records": [r.to_json() for r in recs]}, "\n".join(lines)


def cmd_catalog(args):
    entries = cat.catalog_load(args.catalog)
    if args.action == "list":
        return ({"entries": [{"id": e.id, "description": e.description} for e in entries]},
                "\n".join(f"{e.id:14s} {e.description}" for e in entries))
    if not args.id:
        raise UsageError("catalog show needs an entry id")
    e = cat.find_entry(entries, args.id)
    return e.raw, dumps(e.raw).rstrip("\n")


def cmd_verify_paper(args):
    report = cat.verify_paper(args.catalog)
    return report.to_json(), report.render(), (0 if report.passed else 1)


# -- parser ----------------------------------------------------------------

def build_parser():
    p = argparse.ArgumentParser(prog="brpic", description="Brauer-Picard computations over non-closed fields")
    p.add_argument("--json", action="store_true", help="emit canonical JSON")
    sub = p.add_subparsers(dest="command", required=True)

    def json_flag(sp):
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="emit canonical JSON")

    c = sub.add_parser("cohomology", help="H^n(G; M) via the bar resolution")
    c.add_argument("--group", required=True, help="group file or name (" + ", ".join(NAMED_GROUPS) + ")")
    c.add_argument("--module", required=True, help="module file or Z, Z/n, R^x, C^x, F<q>^x")
    c.add_argument("--degree", required=True, type=int)
    json_flag(c)
    c.set_defaults(func=cmd_cohomology)

    g = sub.add_parser("galois", help="splitting-field scenarios")
    gs = g.add_subparsers(dest="action", required=True)
    gf = gs.add_parser("faithful")
    gf.add_argument("--scenario", required=True)
    gf.add_argument("--embeddings", required=True)
    gf.add_argument("--lenient", action="store_true", help="report a non-group H instead of failing")
    json_flag(gf)
    gf.set_defaults(func=cmd_galois_faithful)
    gi = gs.add_parser("idempotents")
    gi.add_argument("--scenario", required=True)
    json_flag(gi)
    gi.set_defaults(func=cmd_galois_idempotents)

    f = sub.add_parser("fusion", help="fusion ring queries")
    f.add_argument("action", choices=["validate", "profile", "inv", "aut-id"])
    f.add_argument("--data", required=True)
    f.add_argument("--twist", choices=["R", "C", "H"], help="with profile: multiply by this class")
    json_flag(f)
    f.set_defaults(func=cmd_fusion)

    s = sub.add_parser("seq", help="exact sequences")
    ss = s.add_subparsers(dest="action", required=True)
    sb = ss.add_parser("solve-brpic")
    for name in ("--inv", "--aut-t", "--br", "--aut-br"):
        sb.add_argument(name, required=True, help="invariant factors, e.g. 2,2 or trivial")
    sb.add_argument("--h3-trivial", action="store_true")
    json_flag(sb)
    sb.set_defaults(func=cmd_seq_solve)
    sv = ss.add_parser("verify")
    sv.add_argument("--data", required=True)
    json_flag(sv)
    sv.set_defaults(func=cmd_seq_verify)

    k = sub.add_parser("classify", help="graded extensions")
    ks = k.add_subparsers(dest="action", required=True)
    kv = ks.add_parser("vecr")
    kv.add_argument("--group", required=True)
    json_flag(kv)
    kv.set_defaults(func=cmd_classify_vecr)

    ca = sub.add_parser("catalog", help="built-in catalog")
    ca.add_argument("action", choices=["list", "show"])
    ca.add_argument("id", nargs="?")
    ca.add_argument("--catalog", help=f"catalog path (default ${cat.ENV_VAR} or the built-in one)")
    json_flag(ca)
    ca.set_defaults(func=cmd_catalog)

    v = sub.add_parser("verify-paper", help="run every catalog expectation and property check")
    v.add_argument("--catalog")
    json_flag(v)
    v.set_defaults(func=cmd_verify_paper)
    return p


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        result = args.func(args)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except BrpicError as exc:
        err.write(f"error: {exc.name}: {exc}\n")
        return 1
    data, text, *rest = result
    code = rest[0] if rest else 0
    out.write(dumps(data) if args.json else text + "\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
