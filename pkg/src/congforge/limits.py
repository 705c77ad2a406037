"""Global size caps guarding combinatorial blowups.

Every constructor that can explode (direct products, closures, full
partition lattices, subspace enumerations) checks against a single cap.
The default is 20000 elements; the environment variable CONGFORGE_CAP
overrides it.  Exceeding the cap raises, never silently truncates.
"""

import os

DEFAULT_SIZE_CAP = 20_000


class SizeLimitError(Exception):
    """Requested object would exceed the configured size cap."""


def size_cap():
    raw = os.environ.get("CONGFORGE_CAP")
    if raw is None:
        return DEFAULT_SIZE_CAP
    cap = int(raw)
    if cap <= 0:
        raise ValueError("CONGFORGE_CAP must be a positive integer")
    return cap


def check_cap(requested, what):
    cap = size_cap()
    if requested > cap:
        raise SizeLimitError(
            "%s would have %d elements, over the cap of %d "
            "(set CONGFORGE_CAP to raise it)" % (what, requested, cap)
        )
    return requested
