"""Services for binomial-series: exact tables, series engine, special functions and reports."""

__all__: list[str] = []
