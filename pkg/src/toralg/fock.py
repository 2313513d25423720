"""Bosonic Fock spaces over a rank-2N hyperbolic lattice.

The lattice has isotropic dual bases u_1..u_N, v_1..v_N with
(u_i|v_j) = delta_ij and (u|u) = (v|v) = 0. A module M+(alpha, beta) is
spanned by oscillator monomials applied to lattice points

    e^gamma,  gamma = (alpha + s) u + beta v,  s in Z^N,

so a basis state is a pair (osc, s): osc a sorted tuple of creation
symbols (kind, p, n) with kind in {'u','v'}, p in 1..N, n <= -1, and s
an integer vector. The commutation rule is [x(n), y(m)] = n (x|y)
delta_{n,-m}, and zero modes act by x(0) e^gamma = (x|gamma) e^gamma.
Because the shift sublattice Z^N u is isotropic, the usual lattice
cocycle is identically 1 and carries no signs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linear import LinComb, lincomb_add_into
from .scalar import Q, ZERO


@dataclass(frozen=True)
class LatticeParams:
    """Module data: rank N, rational alpha in Q^N, integral beta."""
    N: int
    alpha: tuple
    beta: tuple

    def __post_init__(self):
        if self.N < 1:
            raise ValueError("lattice rank must be at least 1")
        alpha = tuple(Q(a) for a in self.alpha)
        beta = tuple(int(b) for b in self.beta)
        if len(alpha) != self.N or len(beta) != self.N:
            raise ValueError("alpha and beta must have length N")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)


def vacuum_lattice(N: int) -> LatticeParams:
    """alpha = beta = 0: the lattice half of the vertex algebra itself."""
    return LatticeParams(N, (0,) * N, (0,) * N)


def osc_sym(kind: str, p: int, n: int):
    if kind not in ("u", "v") or n == 0:
        raise ValueError(f"bad oscillator ({kind}, {p}, {n})")
    return (kind, p, n)


def osc_key(sym):
    return (sym[2], sym[0], sym[1])


def osc_pair(a_kind, a_p, b_kind, b_p):
    """(x|y) for two lattice directions."""
    return Q(1) if (a_kind != b_kind and a_p == b_p) else ZERO


def gamma_pair(params: LatticeParams, kind, p, s):
    """(x | gamma) for gamma = (alpha+s)u + beta v at shift s."""
    if kind == "u":
        return Q(params.beta[p - 1])
    return params.alpha[p - 1] + s[p - 1]


def osc_depth(osc) -> int:
    return -sum(sym[2] for sym in osc)


def hyp_weight(params: LatticeParams, state):
    """(gamma|gamma)/2 + oscillator depth = (alpha+s).beta + depth."""
    osc, s = state
    w = sum(((params.alpha[p] + s[p]) * params.beta[p] for p in range(params.N)), ZERO)
    return w + osc_depth(osc)


def base_weight(params: LatticeParams, s):
    return sum(((params.alpha[p] + s[p]) * params.beta[p] for p in range(params.N)), ZERO)


def oscillator_apply(params: LatticeParams, sym, state: LinComb) -> LinComb:
    """Apply the mode x(n) to a combination of (osc, s) states."""
    kind, p, n = sym
    out = {}
    for (osc, s), coeff in state.items():
        if n < 0:
            new = tuple(sorted(osc + (sym,), key=osc_key))
            lincomb_add_into(out, (new, s), coeff)
        elif n == 0:
            lincomb_add_into(out, (osc, s), coeff * gamma_pair(params, kind, p, s))
        else:
            partner = ("v" if kind == "u" else "u", p, -n)
            mult = osc.count(partner)
            if mult:
                rest = list(osc)
                rest.remove(partner)
                lincomb_add_into(out, (tuple(rest), s), coeff * mult * n)
    return LinComb(out)


def oscillator_apply_comb(params: LatticeParams, op: LinComb, state: LinComb) -> LinComb:
    """Apply a linear combination of oscillator symbols."""
    out = LinComb.zero()
    for sym, c in op.items():
        out = out + oscillator_apply(params, sym, state).scale(c)
    return out


def lattice_shift(r, state: LinComb) -> LinComb:
    """Multiplication by e^{ru}: shifts s by r (trivial cocycle)."""
    out = {}
    for (osc, s), coeff in state.items():
        s2 = tuple(si + ri for si, ri in zip(s, r))
        lincomb_add_into(out, (osc, s2), coeff)
    return LinComb(out)


def enumerate_osc(N: int, max_depth: int):
    """All creation monomials of depth <= max_depth over 2N colors,
    deepest modes first within each tuple."""
    syms_at = {}
    for n in range(1, max_depth + 1):
        row = []
        for kind in ("u", "v"):
            for p in range(1, N + 1):
                row.append((kind, p, -n))
        syms_at[n] = sorted(row, key=osc_key)
    out = []
    for d in range(max_depth + 1):
        out.extend(_osc_at_depth(syms_at, d))
    return out


def _osc_at_depth(syms_at, depth):
    found = []

    def rec(remaining, min_key, acc):
        if remaining == 0:
            found.append(tuple(acc))
            return
        for n in range(remaining, 0, -1):
            for sym in syms_at.get(n, ()):
                k = osc_key(sym)
                if k < min_key:
                    continue
                acc.append(sym)
                rec(remaining - n, k, acc)
                acc.pop()

    rec(depth, (-(depth + 1), "", 0), [])
    return found


def lattice_box(N: int, smax: int):
    """All integer vectors with |s_p| <= smax."""
    out = [()]
    for _ in range(N):
        out = [s + (x,) for s in out for x in range(-smax, smax + 1)]
    return out


def enumerate_basis(params: LatticeParams, max_depth: int, smax=0, points=None):
    """All (osc, s) with oscillator depth <= max_depth and s either in
    the |.|_inf <= smax box or in an explicit list of points."""
    if points is None:
        points = lattice_box(params.N, smax)
    oscs = enumerate_osc(params.N, max_depth)
    return [(osc, tuple(s)) for s in points for osc in oscs]
