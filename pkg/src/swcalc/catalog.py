"""Built-in manifest catalog.

The entries encode literature-standard invariant data for the K3 surface
and the simply connected elliptic surfaces E(n) without multiple fibers:
Euler number 12n, signature -8n, and basic classes r*f for
r = n-2, n-4, ..., -(n-2) along the fiber class f, with alternating
binomial values.  For even n the form is the spin form (2n-1)H + n(-E8)
and f is the first hyperbolic generator.  For odd n the manifold is not
spin (the signature is not divisible by 16), so the form is odd; it is
encoded as diag(1,-1) + (2n-2)H + n(-E8), which is isomorphic to the
standard odd diagonal presentation, and f = (1,1,0,...,0) is then an
isotropic primitive characteristic class.  This is standard input data,
recorded here for convenience; nothing in this file is derived by the
tool.
"""

from math import comb

_FORM_K3 = [{"type": "H"}] * 3 + [{"type": "E8", "sign": -1}] * 2


def _elliptic(n: int) -> dict:
    rank = 12 * n - 2
    if n % 2 == 0:
        form = [{"type": "H"}] * (2 * n - 1) + [{"type": "E8", "sign": -1}] * n
        fiber = [0] * rank
        fiber[0] = 1
    else:
        form = (
            [{"type": "diag", "entries": [1, -1]}]
            + [{"type": "H"}] * (2 * n - 2)
            + [{"type": "E8", "sign": -1}] * n
        )
        fiber = [0] * rank
        fiber[0] = 1
        fiber[1] = 1
    classes = []
    for j in range(n - 1):
        r = n - 2 - 2 * j
        sw = (-1) ** j * comb(n - 2, j)
        classes.append({"coords": [r * x for x in fiber], "sw": sw})
    return {
        "schema_version": 1,
        "name": f"E{n}",
        "provenance": "standard elliptic-surface data from the literature",
        "chi": 12 * n,
        "sigma": -8 * n,
        "b_plus": 2 * n - 1,
        "form": form,
        "basic_classes": classes,
        "assume_conjecture": True,
    }


def _k3() -> dict:
    return {
        "schema_version": 1,
        "name": "K3",
        "provenance": "standard K3-surface data from the literature",
        "chi": 24,
        "sigma": -16,
        "b_plus": 3,
        "form": list(_FORM_K3),
        "basic_classes": [{"coords": [0] * 22, "sw": 1}],
        "assume_conjecture": True,
    }


_BUILDERS = {
    "K3": _k3,
    "E3": lambda: _elliptic(3),
    "E4": lambda: _elliptic(4),
    "E5": lambda: _elliptic(5),
    "E6": lambda: _elliptic(6),
}


def catalog_names() -> tuple[str, ...]:
    return tuple(_BUILDERS)


def catalog_entry(name: str) -> dict | None:
    """Raw manifest dict for a catalog name, or None.  Accepts E(4) for E4."""
    key = name.strip().replace("(", "").replace(")", "").upper()
    builder = _BUILDERS.get(key)
    return builder() if builder else None
