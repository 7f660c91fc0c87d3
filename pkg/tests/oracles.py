"""Independent reference computations used to freeze expected values.

Nothing here imports the package under test.
"""

import mpmath as mp

mp.mp.dps = 50


def wm1_bisect(z, lo=-700, hi=-1, steps=400):
    """W_{-1}(z) by bisection of w*e^w = z on [lo, hi], where w*e^w decreases in w."""
    z = mp.mpf(z)
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if mid * mp.exp(mid) > z:
            # mid*e^mid still closer to 0 than z: root lies nearer -1
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2


def w0_bisect(z, lo=-1, hi=800, steps=400):
    """W_0(z) by bisection of w*e^w = z on [lo, hi]; w*e^w increases there."""
    z = mp.mpf(z)
    lo, hi = mp.mpf(lo), mp.mpf(hi)
    for _ in range(steps):
        mid = (lo + hi) / 2
        if mid * mp.exp(mid) < z:
            lo = mid
        else:
            hi = mid
    return (lo + hi) / 2
