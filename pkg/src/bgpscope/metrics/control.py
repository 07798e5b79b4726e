"""Points of control: the minimal set of ASes needed to connect a target
share (default 90%) of a country's announced addresses to the outside
world, and the control value derived from it."""

from dataclasses import dataclass

from ..graph.relationships import RelIndex
from ..records import V4
from .attribution import owned_weights
from .country import CountryView


@dataclass(frozen=True)
class ControlResult:
    points_of_control: tuple[int, ...]
    value: float
    covered: int
    target: int
    total: int


def greedy_cover(
    coverage: dict[int, frozenset], weights: dict, target: float
) -> tuple[list[int], float]:
    """Greedy weighted set cover over disjoint atoms.

    `coverage` maps candidate -> atom ids, `weights` maps atom -> weight.
    Picks the candidate covering the most uncovered weight until the
    covered weight reaches `target`; ties go to the lowest candidate id.
    Returns (selection, covered weight).
    """
    covered_atoms: set = set()
    covered = 0.0
    selection: list[int] = []
    remaining = dict(coverage)
    while covered < target - 1e-9:
        best = None
        best_gain = 0.0
        for cand in remaining:
            gain = sum(weights[a] for a in remaining[cand] if a not in covered_atoms)
            if gain > best_gain or (gain == best_gain and gain > 0 and (best is None or cand < best)):
                best, best_gain = cand, gain
        if best is None or best_gain <= 0:
            raise ValueError(
                f"coverage target unreachable: covered {covered} of required {target}"
            )
        selection.append(best)
        covered_atoms.update(remaining.pop(best))
        covered += best_gain
    return selection, covered


def control_value(
    view: CountryView,
    coverage_target: float = 0.90,
    as_observed: int | None = None,
    family: str = V4,
    mode: str = "origin",
    rels=None,
) -> ControlResult:
    """Greedy points-of-control selection and the resulting control value.

    Candidates are domestic ASes whose originated prefixes are visible in
    the tables; each covers the addresses it originates under most-specific
    attribution (a prefix announced by several domestic origins credits
    each of them, deduplicated in the union).  mode="cone" instead credits
    every candidate with the addresses originated inside its customer cone,
    for sensitivity analysis.
    """
    total = view.total_addr.get(family, 0)
    if total <= 0:
        raise ValueError(f"no announced {family} addresses for {view.country}")
    weights = owned_weights(view.prefix_origins, family)
    atoms = {p: i for i, p in enumerate(sorted(weights))}
    atom_weight = {atoms[p]: w for p, w in weights.items()}

    coverage: dict[int, set] = {}
    for prefix, origins in view.prefix_origins.items():
        if prefix.family != family:
            continue
        for asn in origins:
            coverage.setdefault(asn, set()).add(atoms[prefix])
    if mode == "cone":
        idx = RelIndex.ensure(rels or ())
        widened = {}
        for asn in view.domestic:
            atoms_cov = set(coverage.get(asn, ()))
            for member in _cone_of(idx, asn) & view.domestic:
                atoms_cov |= coverage.get(member, set())
            if atoms_cov:
                widened[asn] = atoms_cov
        coverage = widened
    elif mode != "origin":
        raise ValueError(f"unknown coverage mode {mode!r}")

    denominator = as_observed if as_observed is not None else len(view.domestic)
    if denominator <= 0:
        raise ValueError("no observed ASes to normalize against")
    target = coverage_target * total
    selection, covered = greedy_cover(
        {a: frozenset(c) for a, c in coverage.items()}, atom_weight, target
    )
    return ControlResult(
        points_of_control=tuple(selection),
        value=len(selection) / denominator,
        covered=int(covered),
        target=int(target),
        total=total,
    )


def _cone_of(idx: RelIndex, asn: int) -> set[int]:
    cone = {asn}
    stack = [asn]
    while stack:
        cur = stack.pop()
        for nxt in idx.customers.get(cur, set()) | idx.siblings.get(cur, set()):
            if nxt not in cone:
                cone.add(nxt)
                stack.append(nxt)
    return cone
