"""The acceptance suite: one function per criterion, each returning a report dict.

Reports are deterministic for a given seed: no timings, sorted keys, and
witnesses rendered as strings. The runner in ``cli verify`` and the pytest
wrapper both call ``run_item``.
"""

from __future__ import annotations

import itertools
import random
from typing import Callable

from . import operad as op
from .operad import OperadElement


def _report(item: str, ok: bool, details: dict, witness=None) -> dict:
    out = {"item": item, "status": "pass" if ok else "fail", "details": details}
    if witness is not None:
        out["witness"] = witness
    return out


def _random_tuple(rng: random.Random, r: int, d: int) -> op.PermTuple:
    perms = list(itertools.permutations(range(1, r + 1)))
    t = [rng.choice(perms)]
    while len(t) < d + 1:
        w = rng.choice(perms)
        if w != t[-1]:
            t.append(w)
    return tuple(t)


def _random_basis_element(rng: random.Random, max_r: int = 3, max_d: int = 3, susp: int = 0) -> OperadElement:
    r = rng.randint(1, max_r)
    d = 0 if r == 1 else rng.randint(0, max_d)
    return OperadElement(r, frozenset({_random_tuple(rng, r, d)}), susp)


def _random_perm(rng: random.Random, r: int) -> op.Perm:
    return tuple(rng.sample(range(1, r + 1), r))


def block_sum(ws: list[op.Perm]) -> op.Perm:
    out, off = [], 0
    for w in ws:
        out.extend(off + i for i in w)
        off += len(w)
    return tuple(out)


def block_permutation(w: op.Perm, sizes: list[int]) -> op.Perm:
    """Relabelling that takes the inputs ordered as (s_{w(1)}, ..., s_{w(r)}) back to (s_1, ..., s_r)."""
    offsets = [0]
    for s in sizes:
        offsets.append(offsets[-1] + s)
    out = []
    for k in w:
        out.extend(offsets[k - 1] + j + 1 for j in range(sizes[k - 1]))
    return tuple(out)


# 1

def item_operad_axioms(seed: int = 0, samples: int = 200) -> dict:
    rng = random.Random(seed)
    fails: dict[str, int] = {k: 0 for k in ("unit", "assoc_sequential", "assoc_parallel",
                                           "equivariance_output", "equivariance_input", "leibniz")}
    witness = None
    one = op.unit()
    for s in range(samples):
        rho = _random_basis_element(rng)
        sigma = _random_basis_element(rng)
        tau = _random_basis_element(rng)
        r = rho.arity
        checks = {}
        checks["unit"] = (op.compose(one, [rho]) == rho and op.compose(rho, [one] * r) == rho)
        i = rng.randint(1, r)
        j = rng.randint(1, sigma.arity)
        checks["assoc_sequential"] = (
            op.partial_compose(rho, i, op.partial_compose(sigma, j, tau))
            == op.partial_compose(op.partial_compose(rho, i, sigma), i + j - 1, tau))
        if r >= 2:
            a, b = sorted(rng.sample(range(1, r + 1), 2))
            checks["assoc_parallel"] = (
                op.partial_compose(op.partial_compose(rho, b, tau), a, sigma)
                == op.partial_compose(op.partial_compose(rho, a, sigma), b + sigma.arity - 1, tau))
        # equivariance: relabel the outer operation
        ins = [one] * r
        ins[i - 1] = sigma
        w = _random_perm(rng, r)
        lhs = op.compose(op.act(w, rho), ins)
        permuted = [ins[k - 1] for k in w]
        rhs = op.act(block_permutation(w, [x.arity for x in ins]), op.compose(rho, permuted))
        checks["equivariance_output"] = lhs == rhs
        # equivariance: relabel inside an input
        u = _random_perm(rng, sigma.arity)
        ins2 = list(ins)
        ins2[i - 1] = op.act(u, sigma)
        blocks = [op.identity_perm(x.arity) for x in ins]
        blocks[i - 1] = u
        checks["equivariance_input"] = op.compose(rho, ins2) == op.act(block_sum(blocks), op.compose(rho, ins))
        lhs = op.differential(op.partial_compose(rho, i, sigma))
        rhs = op.partial_compose(op.differential(rho), i, sigma) + op.partial_compose(rho, i, op.differential(sigma))
        checks["leibniz"] = lhs == rhs
        for k, ok in checks.items():
            if not ok:
                fails[k] += 1
                if witness is None:
                    witness = f"sample {s}: {k} fails for rho={rho}, sigma={sigma}, tau={tau}"
    d2 = {}
    d2_ok = True
    for r in range(1, 5):
        for d in range(0, 6):
            covered, bad = op.d_squared_violations(r, d)
            if bad or covered != op.basis_count(r, d):
                d2_ok = False
                if bad and witness is None:
                    witness = f"delta^2 != 0 on {op.format_tuple(bad[0])}"
            d2[f"r{r}d{d}"] = covered
    # literal exhaustive pass where it is cheap
    literal = 0
    for r in range(1, 4):
        for d in range(0, 6):
            for t in op.basis(r, d):
                literal += 1
                if op.differential(op.differential(OperadElement(r, frozenset({t})))):
                    d2_ok = False
    counts_ok = True
    for r in range(1, 5):
        for d in range(0, 5):
            if sum(1 for _ in op.basis(r, d)) != op.basis_count(r, d):
                counts_ok = False
    ok = not any(fails.values()) and d2_ok and counts_ok
    details = {"samples": samples, "failures": fails, "d_squared_pattern_coverage": d2,
               "d_squared_literal_tuples": literal, "basis_count_matches": counts_ok}
    return _report("01-operad-axioms", ok, details, witness)


# 2

def item_theta_formulas(max_d: int = 6) -> dict:
    bad = []
    for d in range(0, max_d + 1):
        lhs = op.differential(op.theta(d))
        rhs = op.theta(d - 1) + op.tau_theta(d - 1) if d >= 1 else OperadElement.zero(2)
        if lhs != rhs:
            bad.append(f"delta theta_{d}")
        expected = set()
        for k in range(d + 1):
            right = op.theta_tuple(d - k)
            if k % 2:
                right = op.act_tuple(op.TAU, right)
            expected ^= {(op.theta_tuple(k), right)}
        if op.diagonal(op.theta(d)) != frozenset(expected):
            bad.append(f"Delta theta_{d}")
    return _report("02-theta-formulas", not bad, {"max_d": max_d, "failures": bad},
                   bad[0] if bad else None)


# 3

def item_epsilon(seed: int = 0, samples: int = 100, max_r: int = 4) -> dict:
    cocycle = {}
    witness = None
    for r in range(1, max_r + 1):
        checked, bad = op.epsilon_cocycle_violations(r)
        cocycle[f"r{r}"] = {"tuples": checked, "violations": len(bad)}
        if bad and witness is None:
            witness = f"eps_{r}(d t) != 0 for t = {op.format_tuple(bad[0])}"
    rng = random.Random(seed)
    chain_bad = compose_bad = 0
    nonzero = 0
    for s in range(samples):
        r = rng.randint(1, 3)
        d = 0 if r == 1 else rng.randint(r - 1, r + 1)
        rho = OperadElement(r, frozenset({_random_tuple(rng, r, d)}))
        if op.cap_epsilon(op.differential(rho)) != op.differential(op.cap_epsilon(rho)):
            chain_bad += 1
            witness = witness or f"cap not a chain map on {rho}"
        r2 = rng.randint(1, 3)
        d2 = 0 if r2 == 1 else rng.randint(r2 - 1, r2 + 1)
        sigma = OperadElement(r2, frozenset({_random_tuple(rng, r2, d2)}))
        i = rng.randint(1, r)
        lhs = op.cap_epsilon(op.partial_compose(rho, i, sigma))
        rhs = op.partial_compose(op.cap_epsilon(rho), i, op.cap_epsilon(sigma))
        nonzero += bool(lhs)
        if lhs != rhs:
            compose_bad += 1
            witness = witness or f"cap does not respect rho o_{i} sigma for {rho}, {sigma}"
    ok = all(v["violations"] == 0 for v in cocycle.values()) and not chain_bad and not compose_bad
    details = {"cocycle": cocycle, "samples": samples, "chain_map_failures": chain_bad,
               "compose_failures": compose_bad, "nonzero_compose_samples": nonzero}
    return _report("03-epsilon-cap", ok, details, witness)


# 4

def item_cup_i_coherence(max_i: int = 3) -> dict:
    from .coaction import aw_coproduct, boundary_coherence_defect, cup_i_coproduct
    from .simplicial import SimplexRef, collapse_to_sphere, nerve_z2, product, sphere, standard_simplex

    spaces = {"Delta3": standard_simplex(3), "S2": sphere(2),
              "Delta1xDelta1": product(standard_simplex(1), standard_simplex(1)), "nerve_z2_5": nerve_z2(5)}
    details = {}
    witness = None
    ok = True
    for name, x in spaces.items():
        checked = defects = aw_bad = 0
        for n in range(x.top_dim + 1):
            for sid in x.nondegenerate(n):
                s = SimplexRef.nondegenerate(n, sid)
                if cup_i_coproduct(x, 0, s) != aw_coproduct(x, s):
                    aw_bad += 1
                for i in range(0, max_i + 1):
                    checked += 1
                    if boundary_coherence_defect(x, i, s):
                        defects += 1
                        witness = witness or f"{name}: coherence fails for theta_{i} on {sid}"
        details[name] = {"checks": checked, "defects": defects, "aw_mismatches": aw_bad}
        ok = ok and defects == 0 and aw_bad == 0
    f = collapse_to_sphere(1)
    nat_bad = 0
    for n in range(2):
        for sid in f.source.nondegenerate(n):
            s = SimplexRef.nondegenerate(n, sid)
            img = f.on_simplex(s)
            for i in range(max_i + 1):
                pushed = set()
                for a, b in cup_i_coproduct(f.source, i, s):
                    fa, fb = f.on_simplex(a), f.on_simplex(b)
                    if not fa.degenerate and not fb.degenerate:
                        pushed ^= {(fa, fb)}
                target = cup_i_coproduct(f.target, i, img) if not img.degenerate else frozenset()
                if frozenset(pushed) != target:
                    nat_bad += 1
                    witness = witness or f"naturality fails for theta_{i} on {sid}"
    details["naturality_Delta1_to_S1_failures"] = nat_bad
    return _report("04-cup-i-coherence", ok and nat_bad == 0, details, witness)


# 5

def item_steenrod_reproduction(max_degree: int = 8) -> dict:
    from .steenrod import lucas_table, nerve_sq_table

    got = nerve_sq_table(max_degree)
    want = lucas_table(max_degree)
    bad = sorted(k for k in want if got[k] != want[k])
    return _report("05-steenrod-lucas", not bad,
                   {"entries": len(want), "mismatches": len(bad)},
                   f"Sq^{bad[0][0]} x^{bad[0][1]}" if bad else None)


# 6

def item_adem_cartan(top: int = 7) -> dict:
    from .steenrod import adem_normalize
    from .z2square import Z2SquaredNerve, adem_suite, cartan_suite, generic_agreement

    examples = {
        "Sq1Sq1": adem_normalize((1, 1)) == frozenset(),
        "Sq2Sq2": adem_normalize((2, 2)) == frozenset({(3, 1)}),
        "Sq0Sq0": adem_normalize((0, 0)) == frozenset({(0, 0)}),
    }
    adem = list(adem_suite(top))
    adem_counts = {k: sum(1 for r in adem if r[-1] == k) for k in ("ok", "mismatch", "outside")}
    cartan = list(cartan_suite(top))
    cartan_bad = [r for r in cartan if r[-1] != "ok"]
    checked, cross_bad = generic_agreement(2)
    # additivity on sums of two distinct basis classes of one degree
    nv = Z2SquaredNerve(top)
    add_bad = add_checked = 0
    for deg in range(1, 7):
        classes = [(a, deg - a) for a in range(deg + 1)]
        for c1, c2 in itertools.combinations(classes, 2):
            u = (deg, nv.monomial(*c1) ^ nv.monomial(*c2))
            for i in range(deg + 1):
                lhs = nv.detect(nv.sq(i, u))
                rhs = nv.detect(nv.sq(i, (deg, nv.monomial(*c1)))) ^ nv.detect(nv.sq(i, (deg, nv.monomial(*c2))))
                add_checked += 1
                add_bad += lhs != rhs
    witness = None
    bad_adem = [r for r in adem if r[-1] == "mismatch"]
    if bad_adem:
        i, j, cls = bad_adem[0][:3]
        witness = f"Sq^{i} Sq^{j} on x^{cls[0]} y^{cls[1]}"
    elif cartan_bad:
        witness = f"Cartan for {cartan_bad[0][:3]}"
    ok = (all(examples.values()) and adem_counts["mismatch"] == 0 and adem_counts["outside"] == 0
          and not cartan_bad and cross_bad == 0 and add_bad == 0)
    details = {"truncation": top, "normalize_examples": examples, "adem": adem_counts,
               "cartan_checks": len(cartan), "cartan_mismatches": len(cartan_bad),
               "generic_cross_check": {"values": checked, "mismatches": cross_bad},
               "additivity": {"checks": add_checked, "mismatches": add_bad}}
    return _report("06-adem-cartan", ok, details, witness)


# 7

def _coalgebras():
    from .coaction import SimplicialCoalgebra
    from .simplicial import sphere, standard_simplex

    s1 = sphere(1)
    return {
        "N(S1)": SimplicialCoalgebra(s1, name="N_*(S^1)"),
        "reduced N(S1)": SimplicialCoalgebra(s1, reduced=True, name="reduced N_*(S^1)"),
        "N(Delta1)": SimplicialCoalgebra(standard_simplex(1), name="N_*(Delta^1)"),
    }


def item_division(max_n: int = 3) -> dict:
    from .division import divide_almost_free, divided_name, expected_cell_division
    from .free_ealgebra import check_d_squared, format_element, mandell_model

    details = {}
    witness = None
    ok = True
    ks = _coalgebras()
    for n in range(1, max_n + 1):
        F = mandell_model(n)
        for kname, k in ks.items():
            D = divide_almost_free(F, k)
            rep = check_d_squared(D, n - 2, n + 2, 2, 2)
            details[f"F{n}/{kname}"] = {"elements": rep["checked"], "failures": len(rep["failures"])}
            if rep["failures"]:
                ok = False
                witness = witness or f"delta^2 != 0 on {rep['failures'][0]} in F{n}/{kname}"
            if kname != "N(Delta1)":
                for c in k.basis():
                    got = D.h_of(divided_name(f"b{n - 1}", k, c))
                    want = expected_cell_division(n, k, c)
                    if got != want:
                        ok = False
                        witness = witness or f"h(b/{k.label(c)}) = {format_element(got)} in F{n}/{kname}"
    return _report("07-division", ok, details, witness)


# 8

def item_adjunction(seed: int = 0, samples: int = 20) -> dict:
    from .coaction import CircleCoalgebra, CochainAlgebra, PointCoalgebra, SimplicialCoalgebra
    from .division import FreeCarrier, adjunction_check, cochain_value_sampler, free_value_sampler, term_sampler
    from .free_ealgebra import Generator, free_algebra, mandell_model
    from .simplicial import product, sphere, standard_simplex

    s1 = sphere(1)
    V = free_algebra([Generator("e1", 1), Generator("e2", 2)])
    W = free_algebra([Generator("w1", 1), Generator("w2", 2, frozenset({"w3"})), Generator("w3", 3)])
    wc = FreeCarrier(W)
    d3 = CochainAlgebra(standard_simplex(3))
    torus = CochainAlgebra(product(s1, s1))
    configs = [
        ("V={e1,e2} / N(S1) -> N*(Delta3)", V, SimplicialCoalgebra(s1), d3, cochain_value_sampler(d3), term_sampler(V, 2, 3)),
        ("V={e1,e2} / N(Delta1) -> N*(S1xS1)", V, SimplicialCoalgebra(standard_simplex(1)), torus,
         cochain_value_sampler(torus), term_sampler(V, 2, 2)),
        ("F2 / N(Delta1) -> E(W)", mandell_model(2), SimplicialCoalgebra(standard_simplex(1)), wc,
         free_value_sampler(W), term_sampler(mandell_model(2), 1, 0)),
        ("F2 / reduced N(S1) -> E(W)", mandell_model(2), CircleCoalgebra(), wc, free_value_sampler(W),
         term_sampler(mandell_model(2), 3, 2)),
        ("F3 / N(pt) -> E(W)", mandell_model(3), PointCoalgebra(), wc, free_value_sampler(W),
         term_sampler(mandell_model(3), 2, 2)),
    ]
    details = {}
    witness = None
    ok = True
    for name, F, k, B, vs, es in configs:
        rep = adjunction_check(F, k, B, vs, es, samples=samples, seed=seed)
        details[name] = {key: rep[key] for key in ("round_trip", "extension", "differential", "unit")}
        if not rep["passed"]:
            ok = False
            witness = witness or f"{name}: {rep['witness']}"
    return _report("08-adjunction", ok, details, witness)


# 9

def item_loop_model() -> dict:
    from .division import loop_model
    from .free_ealgebra import FreeElement, format_element, full_differential, gen, mandell_model

    details = {}
    witness = None
    ok = True
    for n in range(2, 5):
        L = loop_model(mandell_model(n))
        e, b = f"e{n}", f"b{n - 1}"
        want = gen(e, 1) + FreeElement(frozenset({(op.theta_tuple(n - 1), (e, e))}), 1)
        got = L.h_of(b)
        d2 = [g for g in L.names if full_differential(L, full_differential(L, L.element(g)))]
        details[f"n{n}"] = {"h(b)": format_element(got), "susp": L.susp, "d_squared_failures": len(d2)}
        if got != want or d2:
            ok = False
            witness = witness or f"n={n}: h(b) = {format_element(got)}"
    return _report("09-loop-model", ok, details, witness)


# 10

def item_exact_sequence(length_cap: int = 3, span: int = 6) -> dict:
    from .simplicial import nerve_z2, sphere
    from .steenrod import EMContext

    spaces = {"S1": sphere(1), "S2": sphere(2), "nerve_z2_4": nerve_z2(4)}
    details = {}
    witness = None
    ok = True
    for name, x in spaces.items():
        for n in range(0, 4):
            ctx = EMContext(x, n, length_cap)
            window = ctx.basis_window(n - span, n + span)
            r_bad = pi_bad = 0
            for z in window:
                gz = ctx.g_apply([z])
                if ctx.retraction_apply(gz) != frozenset([z]):
                    r_bad += 1
                    witness = witness or f"{name}, n={n}: r(g(z)) != z for {ctx.format([z])}"
                if ctx.cokernel_project(gz):
                    pi_bad += 1
                    witness = witness or f"{name}, n={n}: pi(g(z)) != 0 for {ctx.format([z])}"
            a_window = ctx.basis_window(n - span, n + span, classical=True)
            hits = sum(ctx.cokernel_project([z]) == frozenset([z]) for z in a_window)
            details[f"{name}/n{n}"] = {"b_basis": len(window), "r_failures": r_bad, "pi_failures": pi_bad,
                                       "a_basis": len(a_window), "a_hit": hits}
            if r_bad or pi_bad or hits != len(a_window):
                ok = False
    return _report("10-exact-sequence", ok, details, witness)


# 11

def item_mapping_space(cap: int = 8) -> dict:
    from .simplicial import cohomology, nerve_z2, point, sphere
    from .steenrod import convolve, mapping_space_series, u_poincare_series, u_series_bruteforce

    details = {}
    ok = True
    for n in (2, 3):
        got = mapping_space_series(sphere(1), n, cap)
        want = convolve(u_poincare_series([n], cap), u_poincare_series([n - 1], cap), cap)
        details[f"S1/n{n}"] = got
        ok = ok and got == want
    for n in (1, 2, 3):
        got = mapping_space_series(point(), n, cap)
        brute = u_series_bruteforce(n, cap)
        details[f"pt/n{n}"] = got
        ok = ok and got == u_poincare_series([n], cap) == brute
    rp = cohomology(nerve_z2(10)).dims
    h = [rp[k] for k in range(11)]
    u1 = u_poincare_series([1], 10)
    details["U(Ae1)"] = u1
    details["H*(nerve_z2_10)"] = h
    ok = ok and u1 == h
    return _report("11-mapping-space", ok, details)


# 12

def item_shuffle() -> dict:
    from .coaction import aw_shuffle_defects, shuffle_chain_map_defects, shuffle_witness
    from .simplicial import product, simplex_id_str, standard_simplex

    p = product(standard_simplex(1), standard_simplex(1))
    aw_bad = aw_shuffle_defects(p)
    cm_bad = shuffle_chain_map_defects(p)
    w = shuffle_witness(p)
    details = {"aw_after_shuffle_defects": len(aw_bad), "chain_map_defects": len(cm_bad),
               "witness_found": w is not None}
    witness = None
    if w is not None:
        def cochain(c):
            return f"deg {c.degree}: " + ", ".join(sorted(simplex_id_str(s) for s in c.support))

        def tensors(ts):
            return sorted(f"{a[1]} (x) {b[1]}" for a, b in ts)
        witness = {"rho": w["rho"], "u": cochain(w["u"]), "v": cochain(w["v"]),
                   "shuffle(rho(u,v))": tensors(w["lhs"]), "rho(shuffle u, shuffle v)": tensors(w["rhs"]),
                   "verified": w["verified"]}
    ok = not aw_bad and not cm_bad and w is not None and w["verified"]
    return _report("12-shuffle", ok, details, witness)


# 13

def item_free_enumeration(max_m: int = 6, arity_cap: int = 3, opdeg_cap: int = 3) -> dict:
    from .free_ealgebra import Generator, brute_force_orbits, enumerate_graded_basis, free_algebra, orbit_key

    gens_sets = [[d] for d in (1, 2, 3)] + [list(p) for p in itertools.combinations_with_replacement((1, 2, 3), 2)]
    cases = bad = 0
    witness = None
    for degs in gens_sets:
        F = free_algebra([Generator(f"v{i}", d) for i, d in enumerate(degs)])
        lo = min(degs) * 2 - opdeg_cap
        for m in range(min(lo, 0), max_m + 1):
            en = enumerate_graded_basis(F, m, arity_cap, opdeg_cap)
            keys = [orbit_key(*t) for t in en]
            brute = brute_force_orbits(F, m, arity_cap, opdeg_cap)
            cases += 1
            if len(set(keys)) != len(keys) or set(keys) != brute:
                bad += 1
                witness = witness or f"V degrees {degs}, m={m}: {len(en)} vs {len(brute)}"
    return _report("13-free-enumeration", bad == 0, {"cases": cases, "mismatches": bad}, witness)


ITEMS: dict[str, Callable[..., dict]] = {
    "01-operad-axioms": item_operad_axioms,
    "02-theta-formulas": item_theta_formulas,
    "03-epsilon-cap": item_epsilon,
    "04-cup-i-coherence": item_cup_i_coherence,
    "05-steenrod-lucas": item_steenrod_reproduction,
    "06-adem-cartan": item_adem_cartan,
    "07-division": item_division,
    "08-adjunction": item_adjunction,
    "09-loop-model": item_loop_model,
    "10-exact-sequence": item_exact_sequence,
    "11-mapping-space": item_mapping_space,
    "12-shuffle": item_shuffle,
    "13-free-enumeration": item_free_enumeration,
}

SEEDED = {"01-operad-axioms", "03-epsilon-cap", "08-adjunction"}


def run_item(name: str, seed: int = 0) -> dict:
    fn = ITEMS[name]
    try:
        return fn(seed=seed) if name in SEEDED else fn()
    except Exception as exc:  # a crash is a failure, reported with its message
        return _report(name, False, {"error": f"{type(exc).__name__}: {exc}"})


def run_all(seed: int = 0) -> list[dict]:
    return [run_item(name, seed) for name in sorted(ITEMS)]


def summary_line(rep: dict) -> str:
    return f"{rep['item']}: {rep['status'].upper()}"
