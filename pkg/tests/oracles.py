"""Brute-force reference implementations used to cross-check the package.

Everything here is written with plain Python loops and `math`, on purpose:
these oracles must stay independent of numpy and of the code under test.
"""

import math


def mean_ref(values):
    values = list(values)
    return sum(values) / len(values)


def population_sd_ref(values):
    values = list(values)
    m = mean_ref(values)
    return math.sqrt(sum((x - m) ** 2 for x in values) / len(values))


def cv_ref(values):
    """Population standard deviation over arithmetic mean."""
    return population_sd_ref(values) / mean_ref(values)


def pearson_ref(xs, ys):
    """Product-moment correlation via the raw definition."""
    xs, ys = list(xs), list(ys)
    n = len(xs)
    mx, my = mean_ref(xs), mean_ref(ys)
    num = sum((xs[i] - mx) * (ys[i] - my) for i in range(n))
    den = math.sqrt(sum((x - mx) ** 2 for x in xs)) * math.sqrt(
        sum((y - my) ** 2 for y in ys)
    )
    return num / den

def inner_product_ref(xs, ys):
    return sum(x * y for x, y in zip(xs, ys, strict=True))


def column_cv_ref(matrix, k):
    """Per-column CV of rows k.. of a list-of-rows matrix."""
    rows = matrix[k:]
    ncols = len(matrix[0])
    return [cv_ref([row[t] for row in rows]) for t in range(ncols)]


def column_mean_ref(matrix, k):
    rows = matrix[k:]
    ncols = len(matrix[0])
    return [mean_ref([row[t] for row in rows]) for t in range(ncols)]
