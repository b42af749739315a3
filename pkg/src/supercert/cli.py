"""Command-line front end.

Subcommands: certify, polygon, inertia, disc, mj, du-classes, group-verify,
search.  Input files are TOML or JSON with keys ``r``, ``coeffs`` (list of
coefficient vectors over Z[zeta_r], ascending degree), optional ``hints``
(decimal strings), ``budget`` and ``witness_bound``.  Exit codes: 0 success
or valid certificate, 2 certificate invalid, 1 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
try:
    import tomllib
except ModuleNotFoundError:      # Python < 3.11
    import tomli as tomllib

from .certifier import (CertifyError, certify, search_template)
from .cycpoly import CycPoly, discriminant
from .endochar import du_congruence_classes, m_exponents
from .factorint import DEFAULT_RHO_BUDGET, factor
from .groups import (build_zeta_element, centralizer_order, gl_order,
                     gu_order)
from .newton import detect_v_profile, inertia_decomposition, newton_polygon
from .places import place_by_name


def _load_input(path: str) -> dict:
    with open(path, "rb") as handle:
        raw = handle.read()
    if path.endswith(".toml"):
        data = tomllib.loads(raw.decode())
    else:
        data = json.loads(raw.decode())
    for key in ("r", "coeffs"):
        if key not in data:
            raise CertifyError(f"input file is missing the '{key}' field")
    data["hints"] = [int(h) for h in data.get("hints", [])]
    data["budget"] = int(data.get("budget", DEFAULT_RHO_BUDGET))
    data["witness_bound"] = int(data.get("witness_bound", 100))
    return data


def _poly(data: dict) -> CycPoly:
    return CycPoly.from_int_lists(data["r"], data["coeffs"])


def _cmd_certify(args) -> int:
    data = _load_input(args.input)
    cert = certify(data["r"], data["coeffs"], hints=data["hints"],
                   budget=data["budget"],
                   witness_bound=data["witness_bound"])
    text = cert.to_json()
    if args.output:
        with open(args.output, "w") as handle:
            handle.write(text + "\n")
    else:
        print(text)
    return 0 if cert.valid else 2


def _cmd_polygon(args) -> int:
    data = _load_input(args.input)
    f = _poly(data)
    place = place_by_name(data["r"], args.place)
    poly = newton_polygon(f, place)
    print(f"place {place.name}: vertices {list(poly.vertices)}")
    profile = detect_v_profile(f, place)
    if profile is None:
        print("no admissible polygon shape detected")
    else:
        print(f"kind {profile.kind}: v-degree {list(profile.qs)}, "
              f"height {list(profile.hs)}")
    return 0


def _cmd_inertia(args) -> int:
    data = _load_input(args.input)
    f = _poly(data)
    place = place_by_name(data["r"], args.place)
    profile = detect_v_profile(f, place)
    if profile is None:
        print("no admissible polygon shape detected", file=sys.stderr)
        return 1
    if profile.kind != "standard":
        print(f"transvection shape: v-degree {list(profile.qs)}, "
              f"height {list(profile.hs)}")
        return 0
    dec = inertia_decomposition(profile, data["r"])
    print(f"v-degree {list(dec.qs)}, heights {list(dec.hs)}")
    print(f"order-2q blocks (q, D, delta): {list(dec.ab_blocks)}")
    print(f"order-2r blocks (delta, count): {list(dec.extra_r_blocks)}")
    print(f"toric blocks (h, count): {list(dec.toric_blocks)}")
    print(f"genus {dec.genus}")
    return 0


def _cmd_disc(args) -> int:
    data = _load_input(args.input)
    f = _poly(data)
    disc = discriminant(f)
    norm = abs(disc.norm())
    print(f"disc(f) = {disc}")
    print(f"norm = {norm}")
    fact = factor(int(norm), budget=data["budget"], hints=data["hints"])
    parts = [f"{p}^{e}" if e > 1 else str(p)
             for p, e in sorted(fact.factors)]
    if fact.cofactor != 1:
        parts.append(f"C{len(str(fact.cofactor))}={fact.cofactor}")
    print(" * ".join(parts))
    return 0


def _cmd_mj(args) -> int:
    print(f"m = {list(m_exponents(args.r, args.d))}")
    return 0


def _cmd_du_classes(args) -> int:
    for modulus, residues in du_congruence_classes(args.r, args.d):
        print(f"{', '.join(str(x) for x in residues)} (mod {modulus})")
    return 0


def _cmd_group_verify(args) -> int:
    elt = build_zeta_element(args.r, args.n, args.ell)
    got_sp = centralizer_order(elt, "Sp")
    got_gsp = centralizer_order(elt, "GSp")
    i = 1
    while pow(args.ell, i, args.r) != 1:
        i += 1
    if i % 2:
        expect = gl_order(args.n, args.ell**i)
        name = f"GL_{args.n}({args.ell}^{i})" if i > 1 else \
            f"GL_{args.n}({args.ell})"
    else:
        expect = gu_order(args.n, args.ell**(i // 2))
        name = f"GU_{args.n}({args.ell}^{i // 2})" if i > 2 else \
            f"GU_{args.n}({args.ell})"
    print(f"centralizer in Sp: enumerated {got_sp}, expected {expect} "
          f"= |{name}|")
    print(f"centralizer in GSp: enumerated {got_gsp}, expected "
          f"{expect * (args.ell - 1)}")
    return 0 if (got_sp == expect
                 and got_gsp == expect * (args.ell - 1)) else 2


def _cmd_search(args) -> int:
    for f in search_template(args.r, args.d, args.pool):
        print(json.dumps([[int(x) for x in c.coeffs] for c in f.coeffs]))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="supercert",
        description="certify large mod-ell Galois image for y^r = f(x)")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("certify", help="run the full pipeline, print the "
                       "certificate JSON")
    p.add_argument("input", help="TOML/JSON input file")
    p.add_argument("--output", help="write the certificate here instead of "
                   "stdout")
    p.set_defaults(func=_cmd_certify)

    p = sub.add_parser("polygon", help="Newton polygon and detected shape "
                       "at one place")
    p.add_argument("input")
    p.add_argument("--place", required=True, help="place name p:index")
    p.set_defaults(func=_cmd_polygon)

    p = sub.add_parser("inertia", help="inertia block decomposition at one "
                       "place")
    p.add_argument("input")
    p.add_argument("--place", required=True, help="place name p:index")
    p.set_defaults(func=_cmd_inertia)

    p = sub.add_parser("disc", help="discriminant and norm factorization")
    p.add_argument("input")
    p.set_defaults(func=_cmd_disc)

    p = sub.add_parser("mj", help="determinant exponents m_j")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_mj)

    p = sub.add_parser("du-classes", help="congruence classes of ell with "
                       "degenerate-unitary image")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(func=_cmd_du_classes)

    p = sub.add_parser("group-verify", help="centralizer order enumeration "
                       "vs closed form")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=_cmd_group_verify)

    p = sub.add_parser("search", help="enumerate template polynomials from "
                       "a prime pool")
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--pool", type=int, nargs="+", required=True)
    p.set_defaults(func=_cmd_search)
    return parser


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except (CertifyError, ValueError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
