"""Small worked examples printed by ``kemperman demo``."""

from __future__ import annotations

from . import poly
from .ffield import make_ambient, subfield
from .groupsets import GSet, olson_find, parse_group, product_set
from .subspace import product_span, span, subspace_intersect
from .theorems import check_kneser_linear, olson_linear, power_chain
from .transform import reduce_pair


def run_demo(out) -> None:
    def say(line=""):
        out.write(line + "\n")

    L = make_ambient("gf:2:4")
    t, one = L.gen, L.one
    say(f"L = GF(16) = GF(2)[t]/({poly.to_text(L.modulus, 't')})")
    say(f"  t^4 = {(t ** 4).pretty()}    t^-1 = {t.inverse().pretty()}")

    V = span([one, t])
    say(f"  V = span{{1, t}}: dim <VV> = {product_span(V, V).dim}")
    W = span([t, t * t])
    say(f"  V ∩ span{{t, t^2}} = {subspace_intersect(V, W)}")
    G4 = subfield(L, 2)
    say(f"  GF(4) inside L: {G4}")

    rep = check_kneser_linear(V, V)
    say(f"kneser-linear on (V, V): dims {rep.dims}, bound {rep.bound}, {rep.verdict}")

    E, F, trace = reduce_pair(V, V)
    for step in trace.steps:
        say(f"  transform {step.variant} along {step.pivot.pretty()}: {step.dims_before} -> {step.dims_after}")
    say(f"  reduced pair dims ({E.dim}, {F.dim})")

    cert = olson_linear(V, V)
    say(f"olson-linear: case {cert.case_tag}, dim S = {cert.S.dim}, dim H = {cert.H.dim}")
    cert = olson_linear(G4, G4)
    say(f"  on (GF(4), GF(4)): H = {cert.H}")

    pc = power_chain(V)
    say(f"power chain of span{{1, t}}: dims {pc.dims}, stabilizes at n = {pc.stabilization_n}"
        f" <= {pc.bound_2dimL_over_dimB}")

    R = make_ambient("ratfun:2")
    x = R.gen
    A = span([R.one, x])
    B = span([R.one, x, x * x])
    say(f"GF(2)(x): dim <AB> = {product_span(A, B).dim} for dims 2 and 3 (bound 4 is attained)")

    Z6 = parse_group("cyclic:6")
    S = GSet.of(Z6, (0, 1))
    say(f"Z6: {{0,1}}+{{0,1}} = {{{product_set(S, S).to_text()}}}")
    Sg, H, side = olson_find(S, S)
    say(f"  Olson certificate S = {{{Sg.to_text()}}}, H = {{{H.to_text()}}}, side {side}")
