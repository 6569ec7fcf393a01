"""Second-order forward-mode jets, vectorized over evaluation points.

A ``Jet2`` carries value, gradient and Hessian with respect to ``m`` seed
parameters and propagates them exactly through arithmetic, so immersion
derivatives come out at machine precision (no truncation error).  Shapes:
``value (...,)``, ``grad (..., m)``, ``hess (..., m, m)`` where ``...`` are
arbitrary batch axes (evaluation nodes, ambient components).
"""

from __future__ import annotations

import numpy as np


class Jet2:
    __slots__ = ("v", "g", "h")

    def __init__(self, v, g, h):
        self.v = np.asarray(v, dtype=float)
        self.g = np.asarray(g, dtype=float)
        self.h = np.asarray(h, dtype=float)

    @property
    def nvars(self) -> int:
        return self.g.shape[-1]

    @staticmethod
    def constant(v, m: int) -> "Jet2":
        v = np.asarray(v, dtype=float)
        return Jet2(v, np.zeros(v.shape + (m,)), np.zeros(v.shape + (m, m)))

    @staticmethod
    def variable(v, index: int, m: int) -> "Jet2":
        """A jet with unit derivative along seed direction ``index``."""
        v = np.asarray(v, dtype=float)
        g = np.zeros(v.shape + (m,))
        g[..., index] = 1.0
        return Jet2(v, g, np.zeros(v.shape + (m, m)))

    def __getitem__(self, idx) -> "Jet2":
        return Jet2(self.v[idx], self.g[idx], self.h[idx])

    def sum(self, axis: int) -> "Jet2":
        """Sum over a batch axis of the value (axis counted in value shape)."""
        if axis < 0:
            axis += self.v.ndim
        return Jet2(self.v.sum(axis), self.g.sum(axis), self.h.sum(axis))

    def __neg__(self):
        return Jet2(-self.v, -self.g, -self.h)

    def __add__(self, other):
        if isinstance(other, Jet2):
            return Jet2(self.v + other.v, self.g + other.g, self.h + other.h)
        other = np.asarray(other, dtype=float)
        v = self.v + other
        if v.shape == self.v.shape:
            return Jet2(v, self.g, self.h)
        m = self.nvars
        g = np.broadcast_to(self.g, v.shape + (m,)).copy()
        h = np.broadcast_to(self.h, v.shape + (m, m)).copy()
        return Jet2(v, g, h)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other if isinstance(other, Jet2) else -np.asarray(other, dtype=float))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet2):
            v = self.v * other.v
            g = self.g * other.v[..., None] + other.g * self.v[..., None]
            h = (
                self.h * other.v[..., None, None]
                + other.h * self.v[..., None, None]
                + _outer(self.g, other.g)
                + _outer(other.g, self.g)
            )
            return Jet2(v, g, h)
        other = np.asarray(other, dtype=float)
        return Jet2(self.v * other, self.g * other[..., None], self.h * other[..., None, None])

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet2):
            return self * other.reciprocal()
        return self * (1.0 / np.asarray(other, dtype=float))

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("Jet2 powers are nonnegative integers")
        out = Jet2.constant(np.ones_like(self.v), self.nvars)
        base = self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def reciprocal(self) -> "Jet2":
        inv = 1.0 / self.v
        return self._lift(inv, -inv * inv, 2.0 * inv * inv * inv)

    def sqrt(self) -> "Jet2":
        s = np.sqrt(self.v)
        return self._lift(s, 0.5 / s, -0.25 / (s * self.v))

    def log(self) -> "Jet2":
        inv = 1.0 / self.v
        return self._lift(np.log(self.v), inv, -inv * inv)

    def _lift(self, f, df, ddf) -> "Jet2":
        """Chain rule for a scalar function applied to this jet."""
        g = df[..., None] * self.g
        h = df[..., None, None] * self.h + ddf[..., None, None] * _outer(self.g, self.g)
        return Jet2(f, g, h)


def _outer(a, b):
    return a[..., :, None] * b[..., None, :]
