"""Machine verification of the face/level identities.

Every check compares two independently computed sides exactly (no tolerance)
and returns a CheckReport carrying both, so a failure is diagnosable from the
report alone.  Sequence checks (power identity, Stanley-type product formula)
take the whole family n = 1..N; the rest act on one arrangement.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from . import bijection
from .arrangement import (
    Arrangement,
    DeformedBraidSpec,
    TypeBSpec,
    build_deformed_braid,
    build_type_b,
    centralize,
    family_spec,
    induced_subarrangement,
    localize,
    restrict_to_flat,
)
from .exactgeom import Flat
from .faces import (
    count_table,
    enumerate_faces,
    face_digraph,
    level_by_components,
    order_components,
)
from .poset import BivariatePolynomial, POLY_T, characteristic_polynomial, poset_of, whitney_polynomial
from .rationals import Vec, ZERO, rat_str
from .series import TruncatedSeries, binom_poly, binomial_power, egf_truncated, stirling2


@dataclass
class CheckReport:
    check: str
    instance: str
    status: str
    lhs: object
    rhs: object
    detail: str = ""

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def to_json(self) -> dict:
        return {
            "check": self.check,
            "instance": self.instance,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            **({"detail": self.detail} if self.detail else {}),
        }


def _report(check: str, instance: str, ok: bool, lhs, rhs, detail: str = "") -> CheckReport:
    return CheckReport(check, instance, "pass" if ok else "fail", lhs, rhs, detail)


def _int(q) -> int:
    f = Fraction(q)
    if f.denominator != 1:
        raise ValueError(f"expected an integer, got {f}")
    return f.numerator


def check_zaslavsky(A: Arrangement, instance: str = "") -> CheckReport:
    """r = |chi(-1)| and b_n = |chi(1)|."""
    table = count_table(A)
    chi = characteristic_polynomial(A)
    lhs = {"r": table.r, "b_n": table.b_count(A.ambient_dim)}
    rhs = {
        "abs_chi_minus1": _int(abs(chi.eval(0, -1))),
        "abs_chi_plus1": _int(abs(chi.eval(0, 1))),
    }
    ok = lhs["r"] == rhs["abs_chi_minus1"] and lhs["b_n"] == rhs["abs_chi_plus1"]
    return _report("zaslavsky", instance, ok, lhs, rhs)


def check_levels(A: Arrangement, instance: str = "") -> CheckReport:
    """Recession level equals digraph component count on every face, and
    same-component witness coordinates stay within (n-1) * max offset."""
    spec = A.spec
    assert isinstance(spec, DeformedBraidSpec), "levels check needs a deformed braid"
    bound = (spec.n - 1) * spec.max_abs_offset
    mismatches = []
    bound_violations = []
    by_recession: dict[int, int] = {}
    by_components: dict[int, int] = {}
    for idx, F in enumerate(enumerate_faces(A)):
        by_recession[F.level] = by_recession.get(F.level, 0) + 1
        G = order_components(face_digraph(A, F))
        lc = len(G.components)
        by_components[lc] = by_components.get(lc, 0) + 1
        if lc != F.level:
            mismatches.append(idx)
        for comp in G.components:
            for a in comp:
                for b in comp:
                    if a < b and abs(F.witness[a - 1] - F.witness[b - 1]) > bound:
                        bound_violations.append((idx, a, b))
    ok = not mismatches and not bound_violations
    detail = ""
    if mismatches:
        detail += f"level mismatches at faces {mismatches[:5]}; "
    if bound_violations:
        detail += f"distance bound violated at {bound_violations[:5]}"
    return _report(
        "levels",
        instance,
        ok,
        {"faces_per_level_recession": dict(sorted(by_recession.items()))},
        {"faces_per_level_components": dict(sorted(by_components.items()))},
        detail.strip(),
    )


def check_boundedness(A: Arrangement, instance: str = "") -> CheckReport:
    """Level-1 faces coincide with the relatively bounded ones per dimension,
    and no deformed braid face is bounded outright (f(d,0) = 0)."""
    assert A.kind == "deformed_braid"
    table = count_table(A)
    lhs = {f"f({d},1)": table.f_count(d, 1) for d in range(A.ambient_dim + 1)}
    rhs = {f"b({d})": table.b_count(d) for d in range(A.ambient_dim + 1)}
    ok = all(
        table.f_count(d, 1) == table.b_count(d) for d in range(A.ambient_dim + 1)
    )
    level0 = {d: table.f_count(d, 0) for d in range(A.ambient_dim + 1)}
    if any(level0.values()):
        ok = False
    return _report(
        "boundedness",
        instance,
        ok,
        lhs,
        rhs,
        "" if not any(level0.values()) else f"nonzero f(d,0): {level0}",
    )


def check_stirling(A: Arrangement, instance: str = "") -> CheckReport:
    """Alternating level-l face count equals l! S(n,l) (sum over d at fixed n)."""
    n = A.ambient_dim
    table = count_table(A)
    lhs = {}
    rhs = {}
    ok = True
    for l in range(1, n + 1):
        alt = sum((-1) ** (d - l) * table.f_count(d, l) for d in range(l, n + 1))
        expected = factorial(l) * stirling2(n, l)
        lhs[f"l={l}"] = alt
        rhs[f"l={l}"] = expected
        ok = ok and alt == expected
    return _report("stirling", instance, ok, lhs, rhs, "sum over d at fixed n")


def check_expansion(A: Arrangement, basis: str, instance: str = "") -> CheckReport:
    """Whitney polynomial equals its binomial-basis expansion.

    basis "typeA" uses C(t,l) with l >= 1; "typeB" uses C((t-1)/2, l) with
    l >= 0.  The x = 0 slice (the characteristic polynomial expansion) is
    compared as well.
    """
    if basis == "typeA":
        if A.kind != "deformed_braid":
            raise ValueError("typeA basis requires a deformed braid arrangement")
        shift, lmin = "none", 1
    elif basis == "typeB":
        if A.kind != "type_b":
            raise ValueError("typeB basis requires a type-B arrangement")
        shift, lmin = "half", 0
    else:
        raise ValueError(f"unknown basis {basis!r}")
    n = A.ambient_dim
    w = whitney_polynomial(A)
    table = count_table(A)
    expansion = BivariatePolynomial()
    for (d, l), cnt in sorted(table.f.items()):
        if l < lmin or cnt == 0:
            continue
        term = binom_poly(l, shift).scale(Fraction((-1) ** (d - l) * cnt))
        expansion = expansion + BivariatePolynomial.monomial(n - d, 0) * term
    ok = w == expansion
    chi = characteristic_polynomial(A)
    ok = ok and chi == expansion.substitute(x=0)
    return _report(
        "expansion",
        instance,
        ok,
        {"whitney": w.to_json(), "chi": chi.to_json()},
        {"binomial_expansion": expansion.to_json()},
        f"basis={basis}",
    )


def check_convolution(A: Arrangement, instance: str = "") -> CheckReport:
    """Level counting by convolution over flats of the centralization:
    f(d,l) = sum over flats X with dim X = l of r(central/X) b_d(A_X)."""
    if A.kind != "deformed_braid":
        raise ValueError("convolution check requires a deformed braid arrangement")
    n = A.ambient_dim
    central = centralize(A)
    P = poset_of(central)
    rhs_table: dict[tuple[int, int], int] = {}
    factorial_mismatch = []
    for X in P.flats:
        l = X.dim
        sub = restrict_to_flat(central, X).arrangement
        r_enum = count_table(sub).r
        r_claim = factorial(X.dim)
        if r_enum != r_claim:
            factorial_mismatch.append((X.dim, r_enum, r_claim))
        loc = localize(A, X)
        loc_table = count_table(loc)
        for d in range(n + 1):
            bd = loc_table.b_count(d)
            if bd:
                key = (d, l)
                rhs_table[key] = rhs_table.get(key, 0) + r_enum * bd
    lhs_table = {k: v for k, v in count_table(A).f.items() if v}
    ok = lhs_table == rhs_table and not factorial_mismatch
    return _report(
        "convolution",
        instance,
        ok,
        {f"f({d},{l})": v for (d, l), v in sorted(lhs_table.items())},
        {f"sum({d},{l})": v for (d, l), v in sorted(rhs_table.items())},
        "" if not factorial_mismatch else f"r(central/X) != dim! at {factorial_mismatch}",
    )


def _multinomial(n: int, parts: Sequence[int]) -> int:
    out = factorial(n)
    for p in parts:
        out //= factorial(p)
    return out


def check_power_identity(
    tables: Sequence, instance: str = "", trunc: Optional[int] = None
) -> CheckReport:
    """f_{d,l}(A_n) equals the multinomial convolution of level-1 counts, and
    the truncated series identity F_l = F_1^l holds."""
    N = trunc if trunc is not None else len(tables)
    if len(tables) < N:
        raise ValueError("incomplete tables")
    mismatches = []
    lhs = {}
    rhs = {}
    for l in range(1, N + 1):
        for n in range(l, N + 1):
            for d in range(l, n + 1):
                expected = 0
                for ns in bijection.compositions(n, l):
                    weight = _multinomial(n, ns)
                    for ds in bijection.compositions(d, l):
                        if any(di > ni for di, ni in zip(ds, ns)):
                            continue
                        prod = 1
                        for ni, di in zip(ns, ds):
                            prod *= tables[ni - 1].f_count(di, 1)
                            if prod == 0:
                                break
                        expected += weight * prod
                actual = tables[n - 1].f_count(d, l)
                if actual or expected:
                    lhs[f"f({d},{l})@n={n}"] = actual
                    rhs[f"conv({d},{l})@n={n}"] = expected
                if actual != expected:
                    mismatches.append((n, d, l))
    F1 = egf_truncated(tables, 1, N)
    series_ok = all(
        egf_truncated(tables, l, N) == F1.power(l) for l in range(1, N + 1)
    )
    ok = not mismatches and series_ok
    detail = "" if series_ok else "series route F_l != F_1^l; "
    if mismatches:
        detail += f"coefficient mismatches at {mismatches[:5]}"
    return _report("power", instance, ok, lhs, rhs, detail.strip())


def check_stanley(arrangements: Sequence[Arrangement], instance: str = "") -> CheckReport:
    """Whitney EGF equals (1 - F_1(-x,-y))^t and (1 + F(-x,-y))^(-t); the
    x = 0 slice reproduces the classical region-count product formula."""
    N = len(arrangements)
    tables = [count_table(A) for A in arrangements]
    whitneys = [whitney_polynomial(A) for A in arrangements]
    lhs_series = TruncatedSeries(N, [BivariatePolynomial.constant(1)] + whitneys)
    F1 = egf_truncated(tables, 1, N)
    rhs1 = binomial_power(-(F1.negate_args()), POLY_T)
    Fsum = TruncatedSeries.zero(N)
    for l in range(1, N + 1):
        Fsum = Fsum + egf_truncated(tables, l, N)
    rhs2 = binomial_power(Fsum.negate_args(), -POLY_T)
    regions = TruncatedSeries(
        N,
        [BivariatePolynomial()]
        + [BivariatePolynomial.constant((-1) ** n * tables[n - 1].r) for n in range(1, N + 1)],
    )
    stanley_rhs = binomial_power(regions, -POLY_T)
    x0_ok = lhs_series.substitute_x(0) == stanley_rhs
    ok = lhs_series == rhs1 and lhs_series == rhs2 and x0_ok
    return _report(
        "stanley",
        instance,
        ok,
        {"whitney_egf": lhs_series.to_json()},
        {"binomial_product": rhs1.to_json()},
        "x=0 slice matches region formula" if x0_ok else "x=0 slice mismatch",
    )


def check_roundtrip(spec: DeformedBraidSpec, instance: str = "") -> CheckReport:
    """Both round trips of the level decomposition, injectivity, dimension
    additivity, level-1 parts, and the image-count identity."""
    A = build_deformed_braid(spec)
    faces = enumerate_faces(A)
    table = count_table(A)
    n = spec.n
    failures = []
    images = {}
    for idx, F in enumerate(faces):
        pi, parts = bijection.phi(spec, F)
        if any(p.level != 1 for p in parts):
            failures.append(("part-level", idx))
        if F.dim != sum(p.dim for p in parts):
            failures.append(("dim-additivity", idx))
        if len(pi.blocks) != F.level:
            failures.append(("partition-size", idx))
        key = (pi.blocks, tuple(p.sign_vector for p in parts))
        if key in images:
            failures.append(("injectivity", idx, images[key]))
        images[key] = idx
        back = bijection.phi_inverse(spec, pi, parts)
        if back.sign_vector != F.sign_vector:
            failures.append(("face-roundtrip", idx))
    # Image counts must reproduce the ordered-partition convolution.
    lhs_counts = {}
    rhs_counts = {}
    count_ok = True
    for (d, l), cnt in sorted(table.f.items()):
        if l == 0:
            continue
        expected = 0
        for pi in bijection.ordered_partitions(n, l):
            sub_tables = [
                count_table(build_deformed_braid(induced_subarrangement(spec, block)))
                for block in pi.blocks
            ]
            for ds in bijection.compositions(d, l):
                prod = 1
                for sub_table, di in zip(sub_tables, ds):
                    prod *= sub_table.f_count(di, 1)
                    if prod == 0:
                        break
                expected += prod
        lhs_counts[f"f({d},{l})"] = cnt
        rhs_counts[f"tuples({d},{l})"] = expected
        if cnt != expected:
            count_ok = False
    ok = not failures and count_ok
    return _report(
        "roundtrip",
        instance,
        ok,
        lhs_counts,
        rhs_counts,
        "" if not failures else f"failures: {failures[:5]}",
    )


# --- suite assembly ---------------------------------------------------------

FAMILY_CHECKS = (
    "zaslavsky",
    "levels",
    "boundedness",
    "stirling",
    "expansion",
    "convolution",
    "roundtrip",
    "power",
    "stanley",
)
PER_ARRANGEMENT_CHECKS = (
    "zaslavsky",
    "levels",
    "boundedness",
    "stirling",
    "expansion",
    "convolution",
    "roundtrip",
)
TYPE_B_CHECKS = ("zaslavsky", "expansion")

CONVOLUTION_N_CAP = 3  # localizations re-enumerate everything; keep n small


def type_a_checks_for(A: Arrangement, spec: DeformedBraidSpec, instance: str, checks) -> list[CheckReport]:
    out = []
    if "zaslavsky" in checks:
        out.append(check_zaslavsky(A, instance))
    if "levels" in checks:
        out.append(check_levels(A, instance))
    if "boundedness" in checks:
        out.append(check_boundedness(A, instance))
    if "stirling" in checks:
        out.append(check_stirling(A, instance))
    if "expansion" in checks:
        out.append(check_expansion(A, "typeA", instance))
    if "convolution" in checks and A.ambient_dim <= CONVOLUTION_N_CAP:
        out.append(check_convolution(A, instance))
    if "roundtrip" in checks:
        out.append(check_roundtrip(spec, instance))
    return out


def run_family_suite(
    family: str,
    n_max: int,
    a: int = 1,
    checks: Sequence[str] = FAMILY_CHECKS,
    trunc: Optional[int] = None,
) -> list[CheckReport]:
    checks = tuple(checks)
    unknown = set(checks) - set(FAMILY_CHECKS)
    if unknown:
        raise ValueError(f"unknown checks {sorted(unknown)}")
    reports: list[CheckReport] = []
    specs = [family_spec(family, n, a) for n in range(1, n_max + 1)]
    arrangements = [build_deformed_braid(s) for s in specs]
    for n, (spec, A) in enumerate(zip(specs, arrangements), start=1):
        label = f"{family}(a={a}) A_{n}"
        reports.extend(type_a_checks_for(A, spec, label, checks))
    N = min(trunc if trunc is not None else 4, n_max)
    tables = [count_table(A) for A in arrangements[:N]]
    label = f"{family}(a={a}) n<={N}"
    if "power" in checks:
        reports.append(check_power_identity(tables, label, N))
    if "stanley" in checks:
        reports.append(check_stanley(arrangements[:N], label))
    return reports


def run_type_b_suite(
    specs: Sequence[tuple[str, TypeBSpec]], checks: Sequence[str] = TYPE_B_CHECKS
) -> list[CheckReport]:
    reports = []
    for label, spec in specs:
        A = build_type_b(spec)
        if "zaslavsky" in checks:
            reports.append(check_zaslavsky(A, label))
        if "expansion" in checks:
            reports.append(check_expansion(A, "typeB", label))
    return reports


def default_type_b_specs() -> list[tuple[str, TypeBSpec]]:
    """Deterministic non-degenerate type-B instances, n <= 3, lists <= 2."""
    half = Fraction(1, 2)
    return [
        ("typeB B1-point", TypeBSpec.make(1, {}, {}, {1: [0]})),
        ("typeB B1-pair", TypeBSpec.make(1, {}, {}, {1: [-half, 1]})),
        ("typeB B2-coxeter", TypeBSpec.make(2, {(1, 2): [0]}, {(1, 2): [0]}, {1: [0], 2: [0]})),
        ("typeB B2-shi", TypeBSpec.make(2, {(1, 2): [0, 1]}, {(1, 2): [0]}, {1: [0], 2: [0]})),
        (
            "typeB B2-rational",
            TypeBSpec.make(
                2, {(1, 2): [-half, 1]}, {(1, 2): [0, 2]}, {1: [0, 1], 2: [-1, 0]}
            ),
        ),
        (
            "typeB B3-coxeter",
            TypeBSpec.make(
                3,
                {p: [0] for p in [(1, 2), (1, 3), (2, 3)]},
                {p: [0] for p in [(1, 2), (1, 3), (2, 3)]},
                {1: [0], 2: [0], 3: [0]},
            ),
        ),
        (
            "typeB B3-mixed",
            TypeBSpec.make(
                3,
                {p: [0, 1] for p in [(1, 2), (1, 3), (2, 3)]},
                {p: [0] for p in [(1, 2), (1, 3), (2, 3)]},
                {1: [0], 2: [0], 3: [0]},
            ),
        ),
        (
            "typeB B3-full",
            TypeBSpec.make(
                3,
                {p: [0, 1] for p in [(1, 2), (1, 3), (2, 3)]},
                {p: [0, 1] for p in [(1, 2), (1, 3), (2, 3)]},
                {1: [0, 1], 2: [0, 1], 3: [0, 1]},
            ),
        ),
    ]


OFFSET_GRID = [Fraction(k, 2) for k in range(-4, 5)]


def random_deformed_specs(
    count: int, n_max: int = 3, seed: int = 0, max_len: int = 3
) -> list[tuple[str, DeformedBraidSpec]]:
    """Deterministic pseudo-random specs with offsets in [-2, 2]."""
    rng = random.Random(seed)
    out = []
    for idx in range(count):
        n = rng.randint(min(2, n_max), n_max)
        table = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                length = rng.randint(1, max_len)
                table[(i, j)] = sorted(rng.sample(OFFSET_GRID, length))
        out.append((f"random#{idx}(seed={seed})", DeformedBraidSpec.make(n, table)))
    return out


def run_random_suite(
    count: int, n_max: int = 3, seed: int = 0, checks: Sequence[str] = PER_ARRANGEMENT_CHECKS
) -> list[CheckReport]:
    reports = []
    for label, spec in random_deformed_specs(count, n_max, seed):
        A = build_deformed_braid(spec)
        reports.extend(type_a_checks_for(A, spec, label, tuple(checks)))
    return reports
