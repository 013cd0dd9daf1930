"""Forward-mode dual numbers over the Bloch coordinates (x, y, z).

Every outcome-probability family in this package is a low-degree polynomial
in (x, y, z), so carrying three partial derivatives through the arithmetic
gives machine-precision gradients with no step-size tuning.  Values and
partials may be floats or numpy arrays (broadcast together), which lets one
formula serve pointwise evaluation, gradients, and vectorized scans.
"""

from __future__ import annotations

__all__ = ["Dual", "seed_xyz"]


class Dual:
    """A value together with its partial derivatives wrt (x, y, z)."""

    __slots__ = ("val", "dx", "dy", "dz")

    def __init__(self, val, dx=0.0, dy=0.0, dz=0.0):
        self.val = val
        self.dx = dx
        self.dy = dy
        self.dz = dz

    def __repr__(self):
        return f"Dual({self.val!r}, {self.dx!r}, {self.dy!r}, {self.dz!r})"

    def __add__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val + other.val, self.dx + other.dx,
                        self.dy + other.dy, self.dz + other.dz)
        return Dual(self.val + other, self.dx, self.dy, self.dz)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, -self.dx, -self.dy, -self.dz)

    def __sub__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val - other.val, self.dx - other.dx,
                        self.dy - other.dy, self.dz - other.dz)
        return Dual(self.val - other, self.dx, self.dy, self.dz)

    def __rsub__(self, other):
        return Dual(other - self.val, -self.dx, -self.dy, -self.dz)

    def __mul__(self, other):
        if isinstance(other, Dual):
            return Dual(self.val * other.val,
                        self.dx * other.val + self.val * other.dx,
                        self.dy * other.val + self.val * other.dy,
                        self.dz * other.val + self.val * other.dz)
        return Dual(self.val * other, self.dx * other,
                    self.dy * other, self.dz * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Dual):
            inv = 1.0 / other.val
            q = self.val * inv
            return Dual(q,
                        (self.dx - q * other.dx) * inv,
                        (self.dy - q * other.dy) * inv,
                        (self.dz - q * other.dz) * inv)
        inv = 1.0 / other
        return Dual(self.val * inv, self.dx * inv, self.dy * inv, self.dz * inv)

    def __rtruediv__(self, other):
        inv = 1.0 / self.val
        q = other * inv
        return Dual(q, -q * inv * self.dx, -q * inv * self.dy, -q * inv * self.dz)

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            raise TypeError("dual powers are restricted to nonnegative integers")
        out = Dual(1.0)
        base = self
        k = n
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out


def seed_xyz(x, y, z):
    """Lift coordinates into dual numbers seeded with unit partials."""
    return (Dual(x, 1.0, 0.0, 0.0),
            Dual(y, 0.0, 1.0, 0.0),
            Dual(z, 0.0, 0.0, 1.0))
