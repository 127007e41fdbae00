"""Integer formal sums over hashable basis elements."""

from __future__ import annotations

_BOUND = 2 ** 63


class OverflowGuard(ArithmeticError):
    pass


def _check(n):
    if not -_BOUND < n < _BOUND:
        raise OverflowGuard("coefficient overflow: %d" % n)
    return n


class FormalSum:
    """A finite integer combination of basis keys; zero coefficients vanish."""

    __slots__ = ("terms",)

    def __init__(self, terms=()):
        self.terms = {}
        items = terms.items() if isinstance(terms, dict) else terms
        for key, coef in items:
            self.add_term(key, coef)

    def add_term(self, key, coef):
        if coef == 0:
            return
        new = _check(self.terms.get(key, 0) + coef)
        if new:
            self.terms[key] = new
        else:
            del self.terms[key]

    def __add__(self, other):
        out = FormalSum(dict(self.terms))
        for key, coef in other.terms.items():
            out.add_term(key, coef)
        return out

    def __sub__(self, other):
        out = FormalSum(dict(self.terms))
        for key, coef in other.terms.items():
            out.add_term(key, -coef)
        return out

    def __neg__(self):
        return FormalSum({k: -c for k, c in self.terms.items()})

    def scale(self, n):
        if n == 0:
            return FormalSum()
        return FormalSum({k: _check(c * n) for k, c in self.terms.items()})

    def map_terms(self, fn):
        """fn(key, coef) -> FormalSum; returns the sum over all terms."""
        out = FormalSum()
        for key, coef in self.terms.items():
            for k2, c2 in fn(key, coef).terms.items():
                out.add_term(k2, c2)
        return out

    def __eq__(self, other):
        return isinstance(other, FormalSum) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def __iter__(self):
        return iter(sorted(self.terms.items(), key=lambda kv: repr(kv[0])))

    def support(self):
        return set(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join("%d*%r" % (c, k) for k, c in self)


def unit(key, coef=1):
    return FormalSum(((key, coef),))
