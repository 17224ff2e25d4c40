"""Regenerate crates/core/src/flow/tableau.rs.

Starts from the rational Prince-Dormand 8(7) coefficients shipped with
nodepy, refines them by Gauss-Newton on the Butcher order conditions in
80-digit arithmetic, and prints the coefficients as double-double pairs.

    python3 scripts/refine_tableau.py > tableau_body.rs
"""

import os
import re
import sys
from fractions import Fraction as Fr
from functools import lru_cache

import mpmath as mp
import nodepy

mp.mp.dps = 80
S = 13


def load_rational():
    src = open(os.path.join(os.path.dirname(nodepy.__file__), "runge_kutta_method.py")).read()
    n = src.index("RK['PD8']")
    blk = src[src.rindex("A=np.array([[0,0,0,0,0,0,0,0,0,0,0,0,0]", 0, n):n]

    def conv(s):
        s = s.replace("*one", "").replace("np.array", "").replace("\n", " ").strip()
        s = s[: s.rindex(")") + 1] if s.startswith("(") else s
        return eval(re.sub(r"(-?\d+)/(\d+)", r"Fr(\1,\2)", s), {"Fr": Fr})

    a = blk.split("b=np.array")[0].split("=", 1)[1]
    b = "(" + blk.split("b=np.array(")[1].split(")")[0] + ")"
    bh = "(" + blk.split("bhat=np.array(")[1].split(")")[0] + ")"
    A = [[Fr(x) for x in r] for r in conv(a.strip())]
    return A, [Fr(x) for x in conv(b)], [Fr(x) for x in conv(bh)]


@lru_cache(None)
def trees(n):
    """Rooted trees with n vertices, each a sorted tuple of child trees."""
    if n == 1:
        return [()]
    out = set()

    def parts(rem, maxsize, maxtree):
        if rem == 0:
            yield ()
            return
        for s in range(min(rem, maxsize), 0, -1):
            for t in trees(s):
                if (s, t) > maxtree:
                    continue
                for rest in parts(rem - s, s, (s, t)):
                    yield ((s, t),) + rest

    for p in parts(n - 1, n - 1, (99, ())):
        out.add(tuple(t for _, t in p))
    return sorted(out)


def order(t):
    return 1 + sum(order(c) for c in t)


def density(t):
    g = order(t)
    for c in t:
        g *= density(c)
    return g


def main():
    A, B, BH = load_rational()
    idx_a = [(i, j) for i in range(S) for j in range(i) if A[i][j] != 0]
    idx_b = [i for i in range(S) if B[i] != 0]
    idx_h = [i for i in range(S) if BH[i] != 0]
    q = lambda f: mp.mpf(f.numerator) / f.denominator
    x = [q(A[i][j]) for i, j in idx_a] + [q(B[i]) for i in idx_b] + [q(BH[i]) for i in idx_h]
    forest = {p: trees(p) for p in range(1, 9)}

    def unpack(x):
        a = [[mp.mpf(0)] * S for _ in range(S)]
        b = [mp.mpf(0)] * S
        h = [mp.mpf(0)] * S
        k = 0
        for i, j in idx_a:
            a[i][j] = x[k]
            k += 1
        for i in idx_b:
            b[i] = x[k]
            k += 1
        for i in idx_h:
            h[i] = x[k]
            k += 1
        return a, b, h

    def residual(x):
        a, b, h = unpack(x)
        memo = {}

        def phi(t):
            if t not in memo:
                v = [mp.mpf(1)] * S
                for ch in t:
                    w = phi(ch)
                    v = [v[i] * mp.fsum(a[i][j] * w[j] for j in range(i)) for i in range(S)]
                memo[t] = v
            return memo[t]

        r = []
        for p in range(1, 9):
            for t in forest[p]:
                ph = phi(t)
                g = mp.mpf(1) / density(t)
                r.append(mp.fsum(b[i] * ph[i] for i in range(S)) - g)
                if p <= 7:
                    r.append(mp.fsum(h[i] * ph[i] for i in range(S)) - g)
        # the last two stages sit at c = 1
        r.append(mp.fsum(a[11]) - 1)
        r.append(mp.fsum(a[12]) - 1)
        return r

    for it in range(6):
        r = residual(x)
        nr = max(abs(v) for v in r)
        print(f"iteration {it}: residual {mp.nstr(nr, 5)}", file=sys.stderr)
        if nr < mp.mpf(10) ** -60:
            break
        n, m = len(x), len(r)
        J = mp.matrix(m, n)
        step = mp.mpf(10) ** -40
        for k in range(n):
            xp = x[:]
            xp[k] += step
            rp = residual(xp)
            for i in range(m):
                J[i, k] = (rp[i] - r[i]) / step
        # minimum-norm least-squares step
        U, sv, V = mp.svd_r(J)
        utr = U.T * mp.matrix(r)
        dx = mp.matrix(n, 1)
        smax = max(sv)
        for k in range(len(sv)):
            if sv[k] > smax * mp.mpf(10) ** -25:
                for l in range(n):
                    dx[l] += V[k, l] * utr[k] / sv[k]
        x = [x[l] - dx[l] for l in range(n)]

    a, b, h = unpack(x)
    c = [mp.fsum(row) for row in a]

    def fmt(v):
        hi = float(v)
        return f"({hi!r}, {float(v - mp.mpf(hi))!r})"

    out = ["pub(crate) const STAGES: usize = 13;\n"]
    for name, vec in (("C", c), ("B", b), ("BHAT", h)):
        out.append(f"pub(crate) const {name}: [(f64, f64); STAGES] = [\n")
        out.extend(f"    {fmt(v)},\n" for v in vec)
        out.append("];\n")
    out.append("#[rustfmt::skip]\npub(crate) const A: [&[(f64, f64)]; STAGES] = [\n")
    for i in range(S):
        out.append("    &[" + ", ".join(fmt(a[i][j]) for j in range(i)) + "],\n")
    out.append("];\n")
    sys.stdout.write("".join(out))


if __name__ == "__main__":
    main()
