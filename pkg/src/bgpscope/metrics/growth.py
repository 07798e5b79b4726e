"""Year-by-year ASN allocation growth for one country, with its share of
the worldwide total."""

from ..ingest.delegations import Registry


def growth_series(
    registry, cc: str, years: range
) -> dict[int, tuple[int, float]]:
    """Cumulative allocated-ASN count at each year end, plus world share.

    Rows without a parseable allocation date are left out (they cannot be
    placed on the time axis).
    """
    reg = Registry.ensure(registry)
    per_year_cc: dict[int, int] = {}
    per_year_world: dict[int, int] = {}
    for country, year in reg.asn_allocation_years():
        per_year_world[year] = per_year_world.get(year, 0) + 1
        if country == cc:
            per_year_cc[year] = per_year_cc.get(year, 0) + 1

    out: dict[int, tuple[int, float]] = {}
    cum_cc = sum(n for y, n in per_year_cc.items() if y < years.start)
    cum_world = sum(n for y, n in per_year_world.items() if y < years.start)
    for year in years:
        cum_cc += per_year_cc.get(year, 0)
        cum_world += per_year_world.get(year, 0)
        share = cum_cc / cum_world if cum_world else 0.0
        out[year] = (cum_cc, share)
    return out
