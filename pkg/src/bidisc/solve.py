"""Damped Newton iteration for small square systems.

The Jacobian is obtained by forward-mode differentiation: residual callables
are evaluated on ``Dual`` numbers, so any function written with plain
arithmetic (+, -, *, /, integer **) differentiates exactly to roundoff.  No
finite-difference step tuning is involved.
"""

import numpy as np

from .errors import NoConvergence, SingularJacobian


class Dual:
    """Scalar value paired with a gradient vector."""

    __slots__ = ("val", "grad")

    def __init__(self, val: float, grad):
        self.val = float(val)
        self.grad = np.asarray(grad, dtype=float)

    @classmethod
    def seed(cls, values) -> list["Dual"]:
        values = np.asarray(values, dtype=float)
        n = values.size
        return [cls(values[i], np.eye(n)[i]) for i in range(n)]

    def _lift(self, other):
        if isinstance(other, Dual):
            return other
        if isinstance(other, (int, float)):
            return Dual(other, np.zeros_like(self.grad))
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Dual(self.val + o.val, self.grad + o.grad)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.val, -self.grad)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Dual(self.val - o.val, self.grad - o.grad)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Dual(self.val * o.val, self.grad * o.val + self.val * o.grad)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        inv = 1.0 / o.val
        return Dual(self.val * inv, (self.grad - self.val * inv * o.grad) * inv)

    def __rtruediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n == 0:
            return Dual(1.0, np.zeros_like(self.grad))
        if n < 0:
            return 1.0 / self.__pow__(-n)
        v = self.val ** (n - 1)
        return Dual(v * self.val, n * v * self.grad)

    def __repr__(self):
        return f"Dual({self.val!r}, {self.grad!r})"


def _residuals(system, x):
    return np.array([float(f(x)) for f in system], dtype=float)


def newton_solve(system, guess, tol: float = 1e-12, *,
                 max_iter: int = 60, max_halvings: int = 40) -> np.ndarray:
    """Solve the square system F(x) = 0 to max-norm residual <= tol.

    Each iteration takes the full Newton step and halves it (up to
    ``max_halvings`` times) until the residual max-norm decreases; if no
    damped step improves, or the iteration budget runs out, NoConvergence is
    raised.  A singular Jacobian raises SingularJacobian.
    """
    x = np.asarray(guess, dtype=float).copy()
    if len(system) != x.size:
        raise ValueError(f"system of {len(system)} equations with {x.size} unknowns is not square")
    fx = _residuals(system, x)
    norm = np.max(np.abs(fx))
    for _ in range(max_iter):
        if norm <= tol:
            return x
        duals = Dual.seed(x)
        jac = np.empty((x.size, x.size), dtype=float)
        for i, f in enumerate(system):
            out = f(duals)
            if not isinstance(out, Dual):
                out = Dual(float(out), np.zeros(x.size))
            jac[i] = out.grad
        try:
            step = np.linalg.solve(jac, -fx)
        except np.linalg.LinAlgError as exc:
            raise SingularJacobian(str(exc)) from exc
        if not np.all(np.isfinite(step)):
            raise SingularJacobian("Newton step is not finite")
        scale = 1.0
        for _ in range(max_halvings + 1):
            x_new = x + scale * step
            f_new = _residuals(system, x_new)
            n_new = np.max(np.abs(f_new))
            if n_new < norm or n_new <= tol:
                x, fx, norm = x_new, f_new, n_new
                break
            scale *= 0.5
        else:
            raise NoConvergence(f"no damped step reduced the residual below {norm:.3e}")
    if norm <= tol:
        return x
    raise NoConvergence(f"residual {norm:.3e} after {max_iter} iterations (tol {tol:.1e})")
