#!/usr/bin/env python3
"""Generate Hecke-eigenvalue fixtures for the end-to-end identity check.

Computes newform eigenvalue systems of weight k for Gamma_0(N) with
floating-point Manin symbols: the dual space is the null space of the
two-term and three-term relations, Hecke operators act through
Heilbronn-Cremona matrices, and eigenvalues a_p are extracted from a
dual eigenvector through a single well-chosen coordinate.  Local types
at the primes dividing the level are tagged by matching quadratic
twists of lower-level newforms.

The script validates itself against classical eigenvalue data (level 11
weight 2, level 5 weight 4, level 1 weight 12) before writing anything.
"""

import argparse
import json
import math
import sys
import time
from math import comb, gcd

import numpy as np
import scipy.linalg
import scipy.sparse

# The polynomial part of a Manin symbol transforms by direct substitution:
# (P, (u:v)) . g = (P(a X + b Y, c X + d Y), (u:v) g).  Validated against
# tau(p) at level 1 weight 12 (the adjugate variant fails there).
POLY_MODE = "direct"


def primes_up_to(n):
    sieve = np.ones(n + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(n**0.5) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return np.nonzero(sieve)[0].tolist()


def kronecker(a, n):
    if n == 0:
        return 1 if a in (1, -1) else 0
    sign = 1
    if n < 0:
        n = -n
        if a < 0:
            sign = -sign
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v:
        if a % 2 == 0:
            return 0
        if v % 2 and a % 8 in (3, 5):
            sign = -sign
    a %= n
    while a:
        w = 0
        while a % 2 == 0:
            a //= 2
            w += 1
        if w % 2 and n % 8 in (3, 5):
            sign = -sign
        if a % 4 == 3 and n % 4 == 3:
            sign = -sign
        a, n = n % a, a
    return sign if n == 1 else 0


# ---------------------------------------------------------------------------
# Heilbronn-Cremona matrices for T_p.


def heilbronn(p):
    if p == 2:
        return [(1, 0, 0, 2), (2, 0, 0, 1), (2, 1, 0, 1), (1, 0, 1, 2)]
    mats = [(1, 0, 0, p)]
    for r in range(-(p // 2), p // 2 + 1):
        x1, x2, y1, y2 = p, -r, 0, 1
        a, b = -p, r
        mats.append((x1, x2, y1, y2))
        while b:
            q = (2 * a + b) // (2 * b)  # nearest integer to a/b
            a, b = -b, a - b * q
            x1, x2 = x2, q * x2 - x1
            y1, y2 = y2, q * y2 - y1
            mats.append((x1, x2, y1, y2))
    assert all(m[0] * m[3] - m[1] * m[2] == p for m in mats)
    return mats


# ---------------------------------------------------------------------------
# Weight-k Manin symbol space for Gamma_0(N).


class ManinSpace:
    def __init__(self, N, k):
        self.N = N
        self.k = k
        self.R = k - 2  # polynomial degree
        self.idx, self.nP1 = self._p1_table(N)
        self.dims = (self.R + 1) * self.nP1

    @staticmethod
    def _p1_table(N):
        if N == 1:
            return np.zeros((1, 1), dtype=np.int64), 1
        c = np.arange(N, dtype=np.int64).reshape(N, 1).repeat(N, axis=1)
        d = np.arange(N, dtype=np.int64).reshape(1, N).repeat(N, axis=0)
        best = np.full((N, N), N * N, dtype=np.int64)
        for u in range(1, N):
            if gcd(u, N) != 1:
                continue
            code = ((c * u) % N) * N + (d * u) % N
            np.minimum(best, code, out=best)
        g = np.gcd(np.gcd(c, d), N)
        codes = np.unique(best[g == 1])
        idx = np.full((N, N), -1, dtype=np.int64)
        idx[g == 1] = np.searchsorted(codes, best[g == 1])
        return idx, len(codes)

    def poly_coeffs(self, i, mat):
        """Coefficients of X^i Y^{R-i} after the polynomial action of mat."""
        a, b, c, d = mat
        e1, e2, f1, f2 = (d, -b, -c, a) if POLY_MODE == "adjugate" else (a, b, c, d)
        out = [0.0] * (self.R + 1)
        for j1 in range(i + 1):
            for j2 in range(self.R - i + 1):
                out[j1 + j2] += (
                    comb(i, j1) * comb(self.R - i, j2)
                    * e1**j1 * e2 ** (i - j1)
                    * f1**j2 * f2 ** (self.R - i - j2)
                )
        return out

    def act(self, i, c, d, mat):
        """(symbol index, coefficient) terms of (i,(c:d)) . mat; drops
        images that are not primitive mod N."""
        a, b, cc, dd = mat
        c2 = (c * a + d * cc) % self.N
        d2 = (c * b + d * dd) % self.N
        cls = self.idx[c2, d2]
        if cls < 0:
            return []
        co = self.poly_coeffs(i, mat)
        return [(j * self.nP1 + cls, co[j]) for j in range(self.R + 1) if co[j]]

    def generators(self):
        reps = {}
        for c in range(self.N):
            for d in range(self.N):
                cls = self.idx[c, d]
                if cls >= 0 and cls not in reps:
                    reps[cls] = (c, d)
        if self.N == 1:
            reps = {0: (0, 0)}
        return [reps[cls] for cls in range(self.nP1)]

    def dual_basis(self):
        """Orthonormal basis of the dual space: functionals annihilating
        the two-term and three-term Manin relations."""
        S = (0, -1, 1, 0)
        T = (0, -1, 1, -1)
        rows, cols, vals = [], [], []
        nrow = 0
        reps = self.generators()
        for i in range(self.R + 1):
            for cls, (c, d) in enumerate(reps):
                x = i * self.nP1 + cls
                for terms in ([(x, 1.0)] + self.act(i, c, d, S),
                              [(x, 1.0)] + self.act(i, c, d, T)
                              + self._act2(i, c, d, T)):
                    for s, v in terms:
                        rows.append(nrow)
                        cols.append(s)
                        vals.append(v)
                    nrow += 1
        rel = scipy.sparse.csr_matrix((vals, (rows, cols)),
                                      shape=(nrow, self.dims))
        gram = (rel.T @ rel).toarray()
        w, v = scipy.linalg.eigh(gram)
        null = v[:, w < 1e-8 * max(w[-1], 1.0)]
        return null

    def _act2(self, i, c, d, T):
        out = {}
        for s1, v1 in self.act(i, c, d, T):
            i1, cls1 = divmod(s1, self.nP1)
            c1, d1 = self.generators_cache()[cls1]
            for s2, v2 in self.act(i1, c1, d1, T):
                out[s2] = out.get(s2, 0.0) + v1 * v2
        return list(out.items())

    def generators_cache(self):
        if not hasattr(self, "_gens"):
            self._gens = self.generators()
        return self._gens

    def star_dual(self, null):
        """Transpose of the star involution (c:d) -> (-c:d),
        P(X,Y) -> P(X,-Y) on the dual space."""
        eta = (-1, 0, 0, 1)
        rows, cols, vals = [], [], []
        for i in range(self.R + 1):
            for cls, (c, d) in enumerate(self.generators_cache()):
                x = i * self.nP1 + cls
                for s, v in self.act(i, c, d, eta):
                    rows.append(s)
                    cols.append(x)
                    vals.append(v)
        Sm = scipy.sparse.csr_matrix((vals, (rows, cols)),
                                     shape=(self.dims, self.dims))
        return (null.T @ (Sm.T @ null))

    def hecke_dual(self, p, null):
        """Matrix of the transpose Hecke action on the dual space."""
        H = heilbronn(p)
        rows, cols, vals = [], [], []
        for i in range(self.R + 1):
            for cls, (c, d) in enumerate(self.generators_cache()):
                x = i * self.nP1 + cls
                for mat in H:
                    for s, v in self.act(i, c, d, mat):
                        rows.append(s)
                        cols.append(x)
                        vals.append(v)
        Hm = scipy.sparse.csr_matrix((vals, (rows, cols)),
                                     shape=(self.dims, self.dims))
        return null.T @ (Hm.T @ null)

    def hecke_column(self, p, i, c, d):
        """T_p applied to the single symbol (i,(c:d)) as (indices, weights),
        vectorized over the Heilbronn set."""
        H = np.array(heilbronn(p), dtype=np.int64)
        a, b, cc, dd = H[:, 0], H[:, 1], H[:, 2], H[:, 3]
        c2 = (c * a + d * cc) % self.N
        d2 = (c * b + d * dd) % self.N
        cls = self.idx[c2, d2]
        keep = cls >= 0
        a, b, cc, dd, cls = a[keep], b[keep], cc[keep], dd[keep], cls[keep]
        if POLY_MODE == "adjugate":
            e1, e2, f1, f2 = dd, -b, -cc, a
        else:
            e1, e2, f1, f2 = a, b, cc, dd
        e1 = e1.astype(float); e2 = e2.astype(float)
        f1 = f1.astype(float); f2 = f2.astype(float)
        R, i0 = self.R, i
        coeff = [np.zeros(len(cls)) for _ in range(R + 1)]
        for j1 in range(i0 + 1):
            for j2 in range(R - i0 + 1):
                coeff[j1 + j2] += (
                    comb(i0, j1) * comb(R - i0, j2)
                    * e1**j1 * e2 ** (i0 - j1)
                    * f1**j2 * f2 ** (R - i0 - j2)
                )
        syms = [j * self.nP1 + cls for j in range(R + 1)]
        return syms, coeff


# ---------------------------------------------------------------------------
# Eigen-system computation.

COMBO = {2: 1.0, 5: 1.7320508075688772, 13: 0.5772156649015329}


class EigenSystem:
    def __init__(self, level, weight, phi, small_ap):
        self.level = level
        self.weight = weight
        self.phi = phi  # dual eigenvector on the full Manin space (or None)
        self.ap = dict(small_ap)

    def combo_value(self):
        return sum(w * self.ap[p] for p, w in COMBO.items())


def eigen_systems(N, k, cache={}):
    """Simple (multiplicity-one) Hecke eigen-systems on the dual space,
    with the small eigenvalues a_2, a_5, a_13 attached."""
    if (N, k) in cache:
        return cache[(N, k)]
    space = ManinSpace(N, k)
    null = space.dual_basis()
    if null.shape[1]:
        # restrict to the +1 eigenspace of star: there each cuspidal
        # system appears once, oldform systems with multiplicity > 1
        st = space.star_dual(null)
        assert np.abs(st @ st - np.eye(st.shape[0])).max() < 1e-8, \
            "star is not an involution on the dual space"
        u, sv, _ = np.linalg.svd((st + np.eye(st.shape[0])) / 2)
        null = null @ u[:, sv > 0.5]
    systems = []
    if null.shape[1]:
        A = {p: space.hecke_dual(p, null) for p in COMBO}
        M = sum(w * A[p] for p, w in COMBO.items())
        vals, vecs = np.linalg.eig(M)
        scale = max(1.0, np.abs(vals).max())
        order = np.argsort(vals.real)
        for pos, ii in enumerate(order):
            lam = vals[ii]
            if abs(lam.imag) > 1e-6 * scale:
                continue  # genuinely complex pair: not a real eigen-system
            gap = min(
                (abs(lam - vals[order[j]]) for j in (pos - 1, pos + 1)
                 if 0 <= j < len(order)),
                default=np.inf,
            )
            # true oldform copies split at the 1e-13*scale level while the
            # closest genuine pairs sit ~1e-5*scale apart (measured at 693)
            if gap < 1e-7 * scale:
                continue  # multiplicity > 1: oldform copies, skip
            u = vecs[:, ii].real
            u /= np.linalg.norm(u)
            ap = {}
            good = True
            for p in COMBO:
                w = A[p] @ u
                ap[p] = float(w @ u / (u @ u))
                if np.linalg.norm(w - ap[p] * u) > 1e-4 * max(
                        1.0, abs(ap[p])):
                    good = False  # not a joint eigenvector
            if good:
                systems.append(EigenSystem(N, k, null @ u, ap))
    cache[(N, k)] = (space, systems)
    return cache[(N, k)]


def proper_divisors(n):
    return [d for d in range(1, n) if n % d == 0]


def newform_systems(N, k):
    """Eigen-systems at exact level N: simple systems not matching any
    system at a proper divisor level, and within the Ramanujan bound."""
    space, systems = eigen_systems(N, k)
    old = []
    for d in proper_divisors(N):
        old.extend(s.combo_value() for _, ss in [eigen_systems(d, k)]
                   for s in ss)
    bound = {p: 2 * p ** ((k - 1) / 2) for p in COMBO}
    out = []
    for s in systems:
        if any(abs(s.combo_value() - o) < 1e-5 * max(1, abs(o)) for o in old):
            continue
        if any(abs(s.ap[p]) > bound[p] * (1 + 1e-8) for p in COMBO):
            continue  # Eisenstein system
        out.append(s)
    out.sort(key=lambda s: (round(s.ap[2], 6), round(s.ap[5], 6)))
    return space, out


# ---------------------------------------------------------------------------
# Full a_p extraction through shared coordinates.


def extract_ap(space, systems, pmax, progress=False):
    Phi = np.stack([s.phi for s in systems])
    Phi /= np.abs(Phi).max(axis=1, keepdims=True)
    # greedy cover: few coordinates at which every form has a usable value
    remaining = list(range(len(systems)))
    groups = []
    while remaining:
        sub = np.abs(Phi[remaining])
        x0 = int(np.argmax(sub.min(axis=0) + 1e-3 * sub.mean(axis=0)))
        take = [f for f in remaining if abs(Phi[f, x0]) >= 0.05]
        if not take:  # fall back: best coordinate of the first form
            f = remaining[0]
            x0 = int(np.argmax(np.abs(Phi[f])))
            take = [f]
        groups.append((x0, take))
        remaining = [f for f in remaining if f not in take]

    t0 = time.time()
    plist = primes_up_to(pmax)
    for count, p in enumerate(plist):
        for x0, forms in groups:
            i0, cls0 = divmod(x0, space.nP1)
            c0, d0 = space.generators_cache()[cls0]
            syms, coeff = space.hecke_column(p, i0, c0, d0)
            vals = np.zeros(len(forms))
            for j in range(space.R + 1):
                vals += Phi[np.ix_(forms, syms[j])] @ coeff[j]
            for f, v in zip(forms, vals):
                systems[f].ap[p] = float(v / Phi[f, x0])
        if progress and count % 200 == 0:
            print(f"    p = {p} ({count + 1}/{len(plist)}, "
                  f"{time.time() - t0:.0f}s)", flush=True)


# ---------------------------------------------------------------------------
# Validation against classical eigenvalue data.

KNOWN = {
    # level, weight: {p: a_p}
    (11, 2): {2: -2, 3: -1, 5: 1, 7: -2, 11: 1, 13: 4, 17: -2, 19: 0,
              23: -1, 29: 0, 31: 7, 37: 3, 41: -8, 43: -6, 47: 8},
    (1, 12): {2: -24, 3: 252, 5: 4830, 7: -16744, 11: 534612, 13: -577738},
    # from the eta-product expression eta(z)^4 eta(5z)^4
    (5, 4): {2: -4, 3: 2, 5: -5, 7: 6, 11: 32, 13: -38, 17: 26, 19: 100},
}


def selftest():
    for (N, k), data in KNOWN.items():
        space, forms = newform_systems(N, k)
        assert len(forms) == 1, f"expected one newform at level {N} weight {k}"
        extract_ap(space, forms, max(data) + 1)
        for p, want in data.items():
            got = forms[0].ap[p]
            assert abs(got - want) < 1e-4 * max(1, abs(want)), \
                f"level {N} weight {k}: a_{p} = {got}, want {want}"
        print(f"  level {N} weight {k}: eigenvalues match for p <= {max(data)}")
    # Hecke commutativity on a nontrivial dual space
    space, _ = eigen_systems(77, 4)
    null = space.dual_basis()
    A2 = space.hecke_dual(2, null)
    A5 = space.hecke_dual(5, null)
    comm = np.abs(A2 @ A5 - A5 @ A2).max()
    assert comm < 1e-6 * np.abs(A2).max() * np.abs(A5).max(), comm
    print(f"  level 77 weight 4: [T_2, T_5] = {comm:.2e}")


# ---------------------------------------------------------------------------
# Twist tagging and output.


def matches_twist(f, g, chi, test_primes):
    return all(abs(f.ap[p] - chi(p) * g.ap[p]) <= 1e-4 * max(1, abs(f.ap[p]))
               for p in test_primes)


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="fixtures")
    ap.add_argument("--pmax", type=int, default=12000)
    ap.add_argument("--selftest-only", action="store_true")
    args = ap.parse_args()

    print("self-test:")
    selftest()
    if args.selftest_only:
        return

    weight = 4
    chi3 = lambda p: kronecker(-3, p)
    test_primes = [p for p in primes_up_to(60) if p not in (3, 7, 11)]

    levels = {}
    for N in (77, 231, 693):
        print(f"level {N}:")
        space, forms = newform_systems(N, weight)
        print(f"  {len(forms)} newform eigen-systems")
        pmax = args.pmax if N == 693 else 600
        extract_ap(space, forms, pmax, progress=(N == 693))
        for p in COMBO:  # Ramanujan sanity on everything extracted
            pass
        for f in forms:
            for p, a in f.ap.items():
                if N % p and abs(a) > 2 * p ** 1.5 * (1 + 1e-6):
                    raise AssertionError(f"Ramanujan fails at {N}, p={p}")
        levels[N] = forms

    # local types at 3 for level-693 forms by twist matching
    tags693 = []
    for f in levels[693]:
        if any(matches_twist(f, g, chi3, test_primes) for g in levels[77]):
            tags693.append("principal-series-twist")
        elif any(matches_twist(f, g, chi3, test_primes) for g in levels[231]):
            tags693.append("steinberg-twist")
        else:
            tags693.append("supercuspidal")
    counts = {t: tags693.count(t) for t in set(tags693)}
    print(f"level 693 types at 3: {counts}")
    assert counts.get("principal-series-twist", 0) == len(levels[77])
    assert counts.get("steinberg-twist", 0) == len(levels[231])

    # the supercuspidal family is stable under twisting by chi_{-3}
    fam = [f for f, t in zip(levels[693], tags693) if t == "supercuspidal"]
    for f in fam:
        twisted = {p: chi3(p) * f.ap[p] for p in test_primes}
        assert any(all(abs(g.ap[p] - twisted[p]) < 1e-4 * max(1, abs(twisted[p]))
                       for p in test_primes) for g in fam), \
            "family is not twist-stable"
    print(f"family size {len(fam)} (twist-stable)")

    # Steinberg sign sanity at the primes exactly dividing the level
    for N, st_primes in ((77, (7, 11)), (231, (3, 7, 11)), (693, (7, 11))):
        for f in levels[N]:
            for p in st_primes:
                want = p ** (weight // 2 - 1)
                assert abs(abs(f.ap[p]) - want) < 1e-4 * want, \
                    f"level {N}: |a_{p}| = {abs(f.ap[p])}, want {want}"

    import os
    os.makedirs(args.out, exist_ok=True)
    for N, forms in levels.items():
        out = []
        for n, f in enumerate(forms):
            types = []
            if N == 693:
                types.append({"p": 3, "type": tags693[levels[693].index(f)]})
            if N in (231,):
                types.append({"p": 3, "type": "steinberg"})
            types += [{"p": 7, "type": "steinberg"},
                      {"p": 11, "type": "steinberg"}]
            out.append({
                "label": f"{N}.{weight}.{n:03d}",
                "level": N,
                "weight": weight,
                "ap": [[int(p), round(a, 8)] for p, a in sorted(f.ap.items())],
                "local_types": types,
                "source": "computed by tools/mkfixtures.py "
                          "(floating-point weight-4 Manin symbols)",
            })
        path = os.path.join(args.out, f"level{N}_weight{weight}.json")
        with open(path, "w") as fh:
            json.dump(out, fh)
        print(f"wrote {path} ({len(out)} forms)")


if __name__ == "__main__":
    main()
