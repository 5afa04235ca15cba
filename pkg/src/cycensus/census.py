"""Census sweeps: count cyclic subgroups across the catalog, compare the
counts with the closed-form predictions, and check the classification and
subgroup-existence statements at desk scale."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .construct import (
    CatalogEntry,
    abelian_of_type,
    catalog_plan,
    cyclic,
    group_by_name,
    order_coverage,
    order_shape,
    p2q_g1,
    p2q_g2,
    p2q_g3,
    pq2_group,
    pq2_variants,
)
from .formulas import (
    classification_list,
    lower_bound,
    predicted_count_by_order,
    predicted_total,
)
from .groups import Group, GroupError
from .numtheory import factorize, find_element_of_order, primes_upto, semidirect_power_exponent

STATUSES = ("pass", "fail", "not-realizable", "out-of-catalog")

# The subgroup-lattice sweep stays below this order; censuses alone are fine
# up to the construction cap.
LATTICE_SWEEP_CAP = 500


@dataclass(frozen=True)
class Verdict:
    """One checked statement.

    status is "pass" exactly when the expected and observed strings agree;
    failures always carry a witness."""

    id: str
    family: str
    label: str
    expected: str
    observed: str
    status: str
    witness: str = ""


@dataclass
class CensusReport:
    """Everything a verification run produces, in deterministic order."""

    max_order: int
    targets: tuple[str, ...]
    rows: list[dict] = field(default_factory=list)
    verdicts: list[Verdict] = field(default_factory=list)
    cross_tab: dict[int, int] = field(default_factory=dict)
    partial_orders: list[int] = field(default_factory=list)
    summary: dict[str, int] = field(default_factory=dict)

    @property
    def failed(self) -> list[Verdict]:
        return [v for v in self.verdicts if v.status == "fail"]


def _verdict(vid: str, family: str, label: str, order: int,
             expected, observed, witness: str = "") -> Verdict:
    """Build a pass/fail verdict; equality of the two sides IS the status."""
    expected, observed = str(expected), str(observed)
    ok = expected == observed
    if not ok and not witness:
        witness = f"{label} (order {order})"
    return Verdict(
        id=vid, family=family, label=label,
        expected=expected, observed=observed,
        status="pass" if ok else "fail", witness=witness,
    )


def ensure_catalog(
    max_order: int, catalog: list[CatalogEntry] | None = None
) -> tuple[list[CatalogEntry], list[Verdict]]:
    """Realize the catalog up to max_order, or trim an already-built one.

    Constructions that error out become failed verdicts instead of
    exceptions, so one bad family cannot take down a whole sweep."""
    if catalog is not None:
        return [e for e in catalog if e.spec.order <= max_order], []
    entries: list[CatalogEntry] = []
    errors: list[Verdict] = []
    seen: dict[object, str] = {}
    for spec, builder in catalog_plan(max_order):
        try:
            group = builder()
        except (GroupError, ValueError) as exc:
            errors.append(
                Verdict(
                    id=f"construct/{spec.label}",
                    family=spec.tag,
                    label=spec.label,
                    expected="a validated multiplication table",
                    observed="construction error",
                    status="fail",
                    witness=str(exc),
                )
            )
            continue
        fp = group.fingerprint()
        first = seen.get(fp)
        if first is None:
            seen[fp] = spec.label
            entries.append(CatalogEntry(spec, group))
        else:
            entries.append(CatalogEntry(spec, group, canonical=False, collides_with=first))
    return entries, errors


def census_rows(entries: list[CatalogEntry]) -> list[dict]:
    """One row of census data per catalog entry."""
    rows = []
    for e in entries:
        g, spec = e.group, e.spec
        rows.append(
            {
                "order": spec.order,
                "label": spec.label,
                "family": spec.tag,
                "census_total": g.census_total(),
                "predicted_total": predicted_total(spec),
                "abelian": g.is_abelian,
                "cyclic": g.is_cyclic,
                "census_by_order": {str(d): c for d, c in g.cyclic_census().items()},
                "coverage": order_coverage(spec.order),
                "collides_with": e.collides_with or "",
            }
        )
    return rows


def _fmt_census(census: dict[int, int]) -> str:
    return " ".join(f"{d}:{c}" for d, c in sorted(census.items()))


# ---------------------------------------------------------------------------
# formula suite


def _per_order_args(spec) -> tuple[int, int, int] | None:
    """(p, n, m) when the entry is C_{p^n} x C_{p^m}, else None."""
    if spec.tag == "CYCLIC":
        fac = factorize(spec.order)
        if len(fac) == 1:
            [(p, e)] = fac.items()
            return p, e, 0
        return None
    if spec.tag in ("ABELIAN_PRODUCT", "ELEM_ABELIAN"):
        typed = [(k, v) for k, v in spec.params if k.startswith("type")]
        if len(typed) != 1:
            return None
        p = int(typed[0][0][4:])
        parts = sorted((int(t) for t in str(typed[0][1]).split("+")), reverse=True)
        if len(parts) != 2:
            return None
        return p, parts[0], parts[1]
    return None


def _semidirect_params(spec) -> tuple[int, int | None] | None:
    """(m, i) for entries built as C_q : C_m with action exponent i."""
    tag = spec.tag
    if tag == "NONAB_PQ":
        p, q = spec.param("p"), spec.param("q")
        return p, find_element_of_order(q, p)
    if tag == "P2Q_G2":
        p, q = spec.param("p"), spec.param("q")
        return p * p, find_element_of_order(q, p)
    if tag == "P2Q_G3":
        p, q = spec.param("p"), spec.param("q")
        return p * p, find_element_of_order(q, p * p)
    return None


def _power_walk(table: np.ndarray, k: int) -> np.ndarray:
    """The k-th power of every element, by k table steps."""
    idx = np.arange(table.shape[0])
    acc = np.zeros_like(idx)
    for _ in range(k):
        acc = table[acc, idx]
    return acc


def _power_law_verdict(entry: CatalogEntry) -> Verdict | None:
    """Check the closed-form power rule (r, s)^k = (r * sum_j i^{js}, ks)
    against the realized table, for every element and several exponents."""
    spec, g = entry.spec, entry.group
    if not any(k == "q" for k, _ in spec.params):
        return None
    q = spec.param("q")
    vid = f"power-law/{spec.label}"
    agree = "closed-form powers agree with the table"
    if spec.tag in ("NONAB_PQ", "P2Q_G2", "P2Q_G3"):
        params = _semidirect_params(spec)
        if params is None or params[1] is None:
            return None
        m, i = params
        n = g.n
        idx = np.arange(n)
        r, s = idx // m, idx % m
        ks = sorted({2, 3, m, q, n - 1})
        for k in ks:
            walked = _power_walk(g.table, k)
            expected = np.array(
                [
                    (lambda rq, ns: rq * m + ns % m)(
                        *semidirect_power_exponent(int(rr), int(ss), k, i, q)
                    )
                    for rr, ss in zip(r, s)
                ]
            )
            if not np.array_equal(walked, expected):
                bad = int(np.nonzero(walked != expected)[0][0])
                return _verdict(
                    vid, spec.tag, spec.label, spec.order,
                    agree, f"mismatch at k={k}",
                    witness=f"element {bad}: table gives {int(walked[bad])}, "
                    f"formula gives {int(expected[bad])}",
                )
        return _verdict(vid, spec.tag, spec.label, spec.order, agree, agree,
                        witness=f"all elements, k in {ks}")
    if spec.tag == "P2Q_G1":
        p = spec.param("p")
        i = find_element_of_order(q, p)
        if i is None:
            return None
        n = g.n
        idx = np.arange(n)
        x, y = idx // p, idx % p
        r, s = x // p, x % p
        ks = sorted({2, 3, p, q, n - 1})
        for k in ks:
            walked = _power_walk(g.table, k)
            expected = np.array(
                [
                    (lambda rq, ns: (rq * p + ns % p) * p + (k * int(yy)) % p)(
                        *semidirect_power_exponent(int(rr), int(ss), k, i, q)
                    )
                    for rr, ss, yy in zip(r, s, y)
                ]
            )
            if not np.array_equal(walked, expected):
                bad = int(np.nonzero(walked != expected)[0][0])
                return _verdict(
                    vid, spec.tag, spec.label, spec.order,
                    agree, f"mismatch at k={k}",
                    witness=f"element {bad}: table gives {int(walked[bad])}, "
                    f"formula gives {int(expected[bad])}",
                )
        return _verdict(vid, spec.tag, spec.label, spec.order, agree, agree,
                        witness=f"componentwise, k in {ks}")
    return None


def _realizability_verdicts(max_order: int, totals_by_order: dict[int, set[int]]) -> list[Verdict]:
    """Record which constrained families refuse construction, per (p, q).

    A refusal under a failed divisibility hypothesis is "not-realizable";
    a construction that unexpectedly succeeds there is a failure.  Also
    records, per p*q^2 order, the one count shape no group attains."""
    verdicts: list[Verdict] = []
    primes = primes_upto(max_order)

    def attempt(vid: str, family: str, label: str, order: int, builder, reason: str) -> None:
        try:
            builder()
        except GroupError as exc:
            verdicts.append(
                Verdict(
                    id=vid, family=family, label=label,
                    expected=f"construction refused ({reason})",
                    observed="construction refused",
                    status="not-realizable",
                    witness=str(exc),
                )
            )
        else:
            verdicts.append(
                Verdict(
                    id=vid, family=family, label=label,
                    expected=f"construction refused ({reason})",
                    observed="a group was constructed",
                    status="fail",
                    witness=f"{label} (order {order}) should not exist",
                )
            )

    for p in primes:
        for q in primes:
            if p >= q:
                continue
            if p * p * q <= max_order:
                n = p * p * q
                if (q - 1) % p:
                    attempt(f"realizable/G1@p={p},q={q}", "P2Q_G1",
                            f"G1@p={p},q={q}", n,
                            lambda p=p, q=q: p2q_g1(p, q), "p does not divide q-1")
                    attempt(f"realizable/G2@p={p},q={q}", "P2Q_G2",
                            f"G2@p={p},q={q}", n,
                            lambda p=p, q=q: p2q_g2(p, q), "p does not divide q-1")
                if (q - 1) % (p * p):
                    attempt(f"realizable/G3@p={p},q={q}", "P2Q_G3",
                            f"G3@p={p},q={q}", n,
                            lambda p=p, q=q: p2q_g3(p, q), "p^2 does not divide q-1")
            if p * q * q <= max_order:
                n = p * q * q
                have = {v.rstrip("0123456789") for v in pq2_variants(p, q)}
                for variant in ("cyc", "scalar", "diag", "irr"):
                    if variant in have:
                        continue
                    reason = ("needs an odd p dividing q+1" if variant == "irr"
                              else "p does not divide q-1")
                    attempt(f"realizable/PQ2{variant}@p={p},q={q}", "PQ2",
                            f"PQ2{variant}@p={p},q={q}", n,
                            lambda p=p, q=q, variant=variant: pq2_group(p, q, variant),
                            reason)
                target = 2 * q + 3
                realized = sorted(totals_by_order.get(n, set()))
                ok = target not in realized
                verdicts.append(
                    Verdict(
                        id=f"realizable/pq2-count-shape-5@p={p},q={q}",
                        family="PQ2",
                        label=f"order {n}",
                        expected=f"no group with {target} cyclic subgroups",
                        observed=("that count is absent" if ok
                                  else f"a group attains {target}"),
                        status="not-realizable" if ok else "fail",
                        witness=f"realized totals {realized}; a cyclic Sylow subgroup "
                        "of square order cannot leave exactly q complements",
                    )
                )
    return verdicts


def run_formula_suite(
    max_order: int, catalog: list[CatalogEntry] | None = None
) -> list[Verdict]:
    """Compare every cataloged census against the closed-form predictions.

    Emits, per entry: the total-count check, the divisor-count floor, the
    equality-iff-cyclic check, and where applicable the per-order counts
    and the semidirect power rule.  Families whose divisibility hypotheses
    fail at a given (p, q) are recorded as not-realizable."""
    entries, verdicts = ensure_catalog(max_order, catalog)
    for e in entries:
        spec, g = e.spec, e.group
        label, tag, order = spec.label, spec.tag, spec.order
        total = g.census_total()
        pred = predicted_total(spec)
        verdicts.append(
            _verdict(f"census-formula/{label}", tag, label, order, pred, total)
        )
        floor = lower_bound(order)
        bound = f"census >= {floor}"
        verdicts.append(
            _verdict(
                f"divisor-floor/{label}", tag, label, order,
                bound, bound if total >= floor else f"census {total} < {floor}",
                witness=f"order {order} has {floor} divisors; census {total}",
            )
        )
        minimal = "census is minimal exactly when cyclic"
        consistent = (total == floor) == g.is_cyclic
        verdicts.append(
            _verdict(
                f"cyclic-minimal/{label}", tag, label, order,
                minimal,
                minimal if consistent
                else f"census {total}, floor {floor}, cyclic {g.is_cyclic}",
            )
        )
        po = _per_order_args(spec)
        if po is not None:
            p, nn, mm = po
            predicted = {}
            for r in range(nn + 1):
                c = predicted_count_by_order(nn, mm, p, r)
                if c:
                    predicted[p**r] = c
            observed = g.cyclic_census()
            verdicts.append(
                _verdict(
                    f"per-order/{label}", tag, label, order,
                    _fmt_census(predicted), _fmt_census(observed),
                )
            )
        pl = _power_law_verdict(e)
        if pl is not None:
            verdicts.append(pl)

    totals_by_order: dict[int, set[int]] = {}
    for e in entries:
        totals_by_order.setdefault(e.spec.order, set()).add(e.group.census_total())
    verdicts.extend(_realizability_verdicts(max_order, totals_by_order))
    return sorted(verdicts, key=lambda v: v.id)


# ---------------------------------------------------------------------------
# classification sweeps


def _expand_templates(k: int | str, max_order: int) -> list[tuple[str, Group]]:
    """All concrete groups the classification list names, up to max_order."""
    instances: list[tuple[str, Group]] = []
    for t in classification_list(k):
        if t.kind == "cyclic-shape":
            wanted = set(t.shapes)
            for n in range(1, max_order + 1):
                if order_shape(n) in wanted:
                    instances.append((f"C{n}", cyclic(n)))
        elif t.kind == "name":
            g = group_by_name(t.name)
            if g.n <= max_order:
                instances.append((t.name, g))
        elif t.kind == "abelian-4q":
            for q in primes_upto(max_order // 4 if max_order >= 4 else 0):
                if q > 2:
                    label = f"C{q}xC2xC2"
                    instances.append((label, abelian_of_type({2: (1, 1), q: (1,)}, name=label)))
        else:
            raise ValueError(f"unknown template kind {t.kind!r}")
    return instances


def _census_matches(k: int | str, total: int) -> bool:
    return total <= 5 if str(k) == "le5" else total == int(k)


def verify_classification(
    k: int | str, max_order: int, catalog: list[CatalogEntry] | None = None
) -> list[Verdict]:
    """Check one classification list in both directions at desk scale.

    Forward: every cataloged group whose census hits k matches a listed
    group (by fingerprint).  Coverage: every listed group of order at most
    max_order has census k and appears in the catalog.  Matching uses
    fingerprints, so this is a strong consistency check rather than an
    isomorphism proof; a scope verdict records the orders the catalog only
    partially covers."""
    entries, verdicts = ensure_catalog(max_order, catalog)
    key = str(k)
    target = "<= 5" if key == "le5" else key
    instances = _expand_templates(k, max_order)
    instance_fps = {g.fingerprint() for _, g in instances}

    catalog_fps: dict[object, list[str]] = {}
    for e in entries:
        catalog_fps.setdefault(e.group.fingerprint(), []).append(e.spec.label)

    matched = "fingerprint matches a listed group"
    for e in entries:
        spec, g = e.spec, e.group
        total = g.census_total()
        if not _census_matches(k, total):
            continue
        ok = g.fingerprint() in instance_fps
        verdicts.append(
            _verdict(
                f"class-{key}-forward/{spec.label}", spec.tag, spec.label, spec.order,
                matched, matched if ok else "no listed group matches",
                witness=f"census {total}",
            )
        )

    for label, g in instances:
        total = g.census_total()
        found = catalog_fps.get(g.fingerprint(), [])
        expected = f"census {target} and cataloged"
        if _census_matches(k, total) and found:
            observed = expected
        else:
            observed = f"census {total}, " + ("cataloged" if found else "missing from catalog")
        verdicts.append(
            Verdict(
                id=f"class-{key}-covered/{label}",
                family="CLASSIFICATION",
                label=label,
                expected=expected,
                observed=observed,
                status="pass" if observed == expected else "fail",
                witness="fingerprint-identical: " + ", ".join(found) if found
                else f"no catalog entry of order {g.n} matches",
            )
        )

    partial = [n for n in range(1, max_order + 1) if order_coverage(n) == "partial"]
    note = f"{len(partial)} orders up to {max_order} have partial catalog coverage"
    verdicts.append(
        Verdict(
            id=f"class-{key}-scope/partial-orders",
            family="CLASSIFICATION",
            label=f"orders up to {max_order}",
            expected=note,
            observed=note,
            status="pass",
            witness="forward checks at those orders see the cataloged families only",
        )
    )
    return sorted(verdicts, key=lambda v: v.id)


# ---------------------------------------------------------------------------
# subgroup-existence sweep


def lagrange_sweep(
    max_order: int, catalog: list[CatalogEntry] | None = None
) -> list[Verdict]:
    """Check that groups of order p^2*q (p < q primes) have a subgroup of
    order p*q, and that the one exception is the order-12 rotation group."""
    if max_order > LATTICE_SWEEP_CAP:
        raise ValueError(
            f"the subgroup sweep is capped at order {LATTICE_SWEEP_CAP}, got {max_order}"
        )
    entries, verdicts = ensure_catalog(max_order, catalog)
    failures: list[str] = []
    for e in entries:
        spec, g = e.spec, e.group
        fac = factorize(spec.order)
        if sorted(fac.values()) != [1, 2]:
            continue
        [(p, _)] = [(r, x) for r, x in fac.items() if x == 2]
        [(q, _)] = [(r, x) for r, x in fac.items() if x == 1]
        if p > q:
            continue
        target = p * q
        observed = g.has_subgroup_of_order(target)
        expected = spec.label != "A4"
        if not observed:
            failures.append(spec.label)
        verdicts.append(
            _verdict(
                f"lagrange/{spec.label}", spec.tag, spec.label, spec.order,
                f"subgroup of order {target}: {expected}",
                f"subgroup of order {target}: {observed}",
                witness=f"order {spec.order} = {p}^2 * {q}",
            )
        )
    expect_failures = ["A4"] if max_order >= 12 else []
    verdicts.append(
        _verdict(
            "lagrange/unique-failure", "LAGRANGE", "orders p^2*q, p < q", max_order,
            str(expect_failures), str(sorted(failures)),
            witness="a subgroup of order p*q is missing only from the order-12 "
            "rotation group",
        )
    )
    return sorted(verdicts, key=lambda v: v.id)


# ---------------------------------------------------------------------------
# single-group census and full reports


def count_one(group: Group, entries: list[CatalogEntry]) -> dict:
    """Census one group and look it up among cataloged entries of its order."""
    census = group.cyclic_census()
    fp = group.fingerprint()
    matches = [e.spec.label for e in entries if e.group.fingerprint() == fp]
    return {
        "order": group.n,
        "census_total": group.census_total(),
        "census_by_order": {str(d): c for d, c in census.items()},
        "abelian": group.is_abelian,
        "cyclic": group.is_cyclic,
        "matches": matches,
        "status": "pass" if matches else "out-of-catalog",
    }


ALL_TARGETS = ("formulas", "le5", "6", "7", "8", "lagrange")


def build_report(
    max_order: int,
    targets: tuple[str, ...] = ALL_TARGETS,
    catalog: list[CatalogEntry] | None = None,
) -> CensusReport:
    """Run the selected verification targets and bundle the results."""
    for t in targets:
        if t not in ALL_TARGETS:
            raise ValueError(f"unknown verification target {t!r} (have {ALL_TARGETS})")
    entries, errors = ensure_catalog(max_order, catalog)
    rows = census_rows(entries)
    verdicts: list[Verdict] = list(errors)
    if "formulas" in targets:
        verdicts.extend(run_formula_suite(max_order, entries))
    for key in ("le5", "6", "7", "8"):
        if key in targets:
            verdicts.extend(verify_classification(key, max_order, entries))
    if "lagrange" in targets:
        verdicts.extend(lagrange_sweep(max_order, entries))
    verdicts.sort(key=lambda v: v.id)

    cross_tab: dict[int, int] = {}
    for row in rows:
        cross_tab[row["census_total"]] = cross_tab.get(row["census_total"], 0) + 1
    partial = [n for n in range(1, max_order + 1) if order_coverage(n) == "partial"]
    summary = {
        "entries": len(rows),
        "orders": len({row["order"] for row in rows}),
        "partial_orders": len(partial),
        "verdicts": len(verdicts),
    }
    for status in STATUSES:
        summary[status.replace("-", "_")] = sum(1 for v in verdicts if v.status == status)
    return CensusReport(
        max_order=max_order,
        targets=tuple(targets),
        rows=rows,
        verdicts=verdicts,
        cross_tab=dict(sorted(cross_tab.items())),
        partial_orders=partial,
        summary=summary,
    )
