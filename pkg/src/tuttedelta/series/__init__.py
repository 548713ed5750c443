"""Forested map generating series: coefficient tables, the R/S system,
closed forms, differential equations, positivity and constants."""

from .core import SeriesError, TruncatedSeries, coefficient_table
from .presets import PRESETS, get_preset
from .systems import solve_RS, series_F, series_G, series_H, mullin_coefficients
from .bruteforce import brute_force_forested
