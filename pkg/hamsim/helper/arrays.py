"""Some helpers for working with arrays."""

import numpy as np


def check_strict_monotonic(array, list_dimensions=None):
    """Check that an array is strictly monotonic. Raise a
    ValueError if not.

    Input:
        array: a numpy array of any dimension.
        list_dimensions: the list of dimensions on which to do
            the check. Check all dimensions if None (default).

    Output: None.

    Can raise:
        a ValueError indicating the first non monotonic dimension.
    """

    if list_dimensions is None:
        n_dim = len(np.shape(array))
        list_dimensions = range(n_dim)
    else:
        assert isinstance(list_dimensions, list)

    for dim in list_dimensions:
        dim_diff = np.diff(array, axis=dim)
        if not (np.all(dim_diff < 0) or np.all(dim_diff > 0)):
            raise ValueError("Array non stricly monotonic on dim {}".format(dim))


def parse_grid(spec):
    """Build a time grid from a "start:stop:step" string or a list of values.

    Input:
        spec: "start:stop:step" (stop included when it falls on the grid),
            or an iterable of numbers.

    Output:
        a 1D float numpy array, strictly increasing.

    Can raise:
        a ValueError for a malformed string, a non-positive step, negative
        times or a grid that is not strictly increasing.
    """

    if isinstance(spec, str):
        parts = spec.split(":")
        if len(parts) != 3:
            raise ValueError("Grid '{}' must read start:stop:step".format(spec))
        try:
            start, stop, step = (float(p) for p in parts)
        except ValueError:
            raise ValueError("Grid '{}' has a non numeric field".format(spec))
        if step <= 0:
            raise ValueError("Grid step must be > 0, got {}".format(step))
        if stop < start:
            raise ValueError("Grid stop {} is before start {}".format(stop, start))
        # round the count so that a stop on the grid is kept despite float error
        count = int(np.floor((stop - start) / step + 1e-9)) + 1
        grid = start + step * np.arange(count)
    else:
        grid = np.asarray(list(spec), dtype=float)

    if grid.size == 0:
        raise ValueError("Grid is empty")
    if np.any(grid < 0):
        raise ValueError("Grid times must be >= 0")
    check_strict_monotonic(grid)
    if grid[-1] < grid[0]:
        raise ValueError("Grid must be strictly increasing")

    return grid
