"""Command line front end.

Subcommands: collections, fixed, lefschetz, verify, suite.  Shared
options pick the output format, cap the group order, fix the seed, and
redirect output to a file.  Exit codes: 0 for success (including
not-applicable verdicts), 1 when a verification fails, 2 for usage,
config, or resource errors.
"""

import argparse
import json
import sys

from .config import DEFAULT_LIMITS, limits_with
from .errors import Error, ResourceLimitError
from .groups import normalizer, subgroup_from_gens
from .homology import homology, reduced_euler
from .lefschetz import cross_validate, p_singular_vanishing, vertex_screen
from .library import build_library_group, library_names
from .pcollect import build_collection, class_flags
from .perms import format_perm, parse_gens
from .posets import build_poset, fixed_subposet
from .quotients import build_frakS
from .reports import run_suite
from .verify import THEOREM_IDS, verify

_FLAG_NAMES = ("radical", "centric", "distinguished", "tilde", "elementary_abelian")


def _common(sub):
    sub.add_argument("--format", choices=("text", "json"), default="text")
    sub.add_argument("--max-order", type=int, default=None, help="group order cap")
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--out", default=None, help="write output here instead of stdout")


def _limits(args):
    overrides = {}
    if args.max_order is not None:
        overrides["max_order"] = args.max_order
    if args.seed is not None:
        overrides["seed"] = args.seed
    return limits_with(DEFAULT_LIMITS, **overrides)


def _emit(args, text):
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        print(text)


def _gens_str(H):
    return "; ".join(format_perm(g) for g in H.gens) or "()"


def cmd_collections(args):
    G = build_library_group(args.group, limits=_limits(args))
    if args.kind == "frakS":
        if not args.t:
            raise Error("the fixed-prime family needs --t with a generator of T")
        T = subgroup_from_gens(G, parse_gens(args.t, G.degree))
        coll = build_frakS(G, args.prime, T)
    else:
        coll = build_collection(G, args.prime, args.kind)
    rows = []
    for cls in coll.classes:
        flags = class_flags(G, args.prime, cls)
        rows.append(
            {
                "order": cls.rep.order(),
                "class_size": cls.size,
                "generators": _gens_str(cls.rep),
                "flags": [f for f in _FLAG_NAMES if flags.get(f)],
            }
        )
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "group": G.name,
                    "prime": args.prime,
                    "kind": args.kind,
                    "classes": rows,
                    "total_members": coll.total_size(),
                },
                indent=2,
            ),
        )
        return 0
    lines = [
        f"{args.kind} collection of {G.name} at p={args.prime}: "
        f"{len(rows)} classes, {coll.total_size()} members"
    ]
    for r in rows:
        tag = ",".join(r["flags"]) or "-"
        lines.append(
            f"  order {r['order']:>5}  size {r['class_size']:>6}  {tag:<40} <{r['generators']}>"
        )
    _emit(args, "\n".join(lines))
    return 0


def cmd_fixed(args):
    limits = _limits(args)
    G = build_library_group(args.group, limits=limits)
    coll = build_collection(G, args.prime, args.kind)
    X = build_poset(coll, acting=G)
    P = subgroup_from_gens(G, parse_gens(args.subgroup, G.degree))
    F = fixed_subposet(X, P, acting=normalizer(G, P), name=f"{args.kind}^P")
    K = F.order_complex(limits)
    prof = homology(K, limits=limits)
    chi = reduced_euler(K)
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "group": G.name,
                    "prime": args.prime,
                    "kind": args.kind,
                    "fixed_by": _gens_str(P),
                    "elements": [
                        {"order": el.order(), "generators": _gens_str(el)}
                        for el in F.elements
                    ],
                    "f_vector": list(K.f_vector()),
                    "reduced_euler": chi,
                    "homology": prof.as_dict(),
                },
                indent=2,
            ),
        )
        return 0
    lines = [
        f"{args.kind} of {G.name} at p={args.prime}, fixed by <{_gens_str(P)}>: "
        f"{len(F.elements)} elements"
    ]
    shown = F.elements[:40]
    for el in shown:
        lines.append(f"  order {el.order():>5}  <{_gens_str(el)}>")
    if len(F.elements) > len(shown):
        lines.append(f"  ... {len(F.elements) - len(shown)} more")
    lines.append(f"f-vector: {list(K.f_vector())}")
    lines.append(f"reduced homology: {prof}")
    lines.append(f"reduced euler characteristic: {chi}")
    _emit(args, "\n".join(lines))
    return 0


def cmd_lefschetz(args):
    limits = _limits(args)
    G = build_library_group(args.group, limits=limits)
    coll = build_collection(G, args.prime, args.kind)
    X = build_poset(coll, acting=G)
    rep = cross_validate(G, X, limits=limits)
    sing = p_singular_vanishing(rep.function, args.prime)
    screen = vertex_screen(G, args.prime, X, limits=limits)
    if args.format == "json":
        _emit(
            args,
            json.dumps(
                {
                    "group": G.name,
                    "prime": args.prime,
                    "kind": args.kind,
                    "class_function": rep.function.as_dict(),
                    "routes_equal": rep.routes_equal,
                    "p_singular_nonzero": [
                        {"class": lab, "element_order": o, "value": v}
                        for _, lab, o, v in sing.nonzero
                    ],
                    "consistent_with_projective": sing.consistent_with_projective,
                    "screen": [
                        {
                            "order": e.rep.order(),
                            "class_size": e.class_size,
                            "verdict": e.verdict,
                            "homology": e.profile.as_dict(),
                        }
                        for e in screen.entries
                    ],
                },
                indent=2,
            ),
        )
        return 0
    lines = [
        f"reduced Lefschetz class function of the {args.kind} nerve, "
        f"{G.name} at p={args.prime} (both routes agree)"
    ]
    lines.extend(rep.function.table_lines())
    lines.append("p-singular values:" + (" all zero" if not sing.nonzero else ""))
    lines.extend("  " + s for s in sing.lines() if sing.nonzero)
    lines.append(
        "projective screen: "
        + ("consistent with a projective virtual module" if sing.consistent_with_projective
           else "nonprojective summands certified")
    )
    lines.append("vertex candidates by class:")
    lines.extend("  " + s for s in screen.lines())
    _emit(args, "\n".join(lines))
    return 0


def cmd_verify(args):
    G = build_library_group(args.group, limits=_limits(args))
    rep = verify(args.theorem, G, args.prime, t=args.t)
    if args.format == "json":
        _emit(args, rep.to_json(stable=args.stable))
    else:
        _emit(args, rep.to_text(stable=args.stable))
    return 0 if rep.ok() else 1


def cmd_suite(args):
    config_text = None
    if args.config:
        with open(args.config) as fh:
            config_text = fh.read()
    # Only override the config file's limit settings when flags were given.
    limits = None
    if args.max_order is not None or args.seed is not None:
        limits = _limits(args)
    res = run_suite(
        config_text,
        out_dir=args.out or ".",
        limits=limits,
        stable=args.stable,
        jobs=args.jobs,
    )
    counts = res.summary()
    where = args.out or "."
    print(
        f"{len(res.reports)} checks: {counts['pass']} passed, "
        f"{counts['fail']} failed, {counts['not-applicable']} not applicable, "
        f"{counts['error']} errored; reports in {where}/suite.txt and {where}/suite.json"
    )
    return res.exit_code


def build_parser():
    ap = argparse.ArgumentParser(
        prog="plocal",
        description="distinguished p-subgroup collections, certificates, and verifiers",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("collections", help="list the classes of one collection")
    c.add_argument("--group", required=True, help="library name, e.g. sym(5), gl32, m11")
    c.add_argument("--prime", type=int, required=True)
    c.add_argument("--kind", default="hatS", help="S A B Ce Bcen hatS hatA hatB tildeS tildeB frakS")
    c.add_argument("--t", default=None, help="generator(s) of T for the frakS kind")
    _common(c)
    c.set_defaults(fn=cmd_collections)

    f = sub.add_parser("fixed", help="fixed subposet of a collection nerve and its homology")
    f.add_argument("--group", required=True)
    f.add_argument("--prime", type=int, required=True)
    f.add_argument("--kind", default="hatB")
    f.add_argument("--subgroup", required=True, help='generators, e.g. "(1,2); (3,4)"')
    _common(f)
    f.set_defaults(fn=cmd_fixed)

    l = sub.add_parser("lefschetz", help="reduced Lefschetz class function with screening")
    l.add_argument("--group", required=True)
    l.add_argument("--prime", type=int, required=True)
    l.add_argument("--kind", default="hatB")
    _common(l)
    l.set_defaults(fn=cmd_lefschetz)

    v = sub.add_parser("verify", help="run one named verifier")
    v.add_argument("--theorem", required=True, help=", ".join(THEOREM_IDS))
    v.add_argument("--group", required=True)
    v.add_argument("--prime", type=int, required=True)
    v.add_argument("--t", default=None, help="generator(s) of the order-p subgroup T")
    v.add_argument("--stable", action="store_true", help="zero out timings for stable output")
    _common(v)
    v.set_defaults(fn=cmd_verify)

    s = sub.add_parser("suite", help="run a config of checks, or the default corpus")
    s.add_argument("--config", default=None, help="config file; omit for the built-in corpus")
    s.add_argument("--jobs", type=int, default=1)
    s.add_argument("--stable", action="store_true")
    s.add_argument("--max-order", type=int, default=None)
    s.add_argument("--seed", type=int, default=None)
    s.add_argument("--out", default=None, help="directory for suite.txt and suite.json")
    s.set_defaults(fn=cmd_suite)

    return ap


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except ResourceLimitError as e:
        print(f"error: resource cap {e.cap} exceeded: {e}", file=sys.stderr)
        return 2
    except Error as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except FileNotFoundError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
