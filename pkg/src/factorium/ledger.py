"""Exact integer checks of the inequality chains behind the degree-sum k-factor bound.

Every quantity in the chains (``h1``, ``h2``, ``s``, ``t``, ``q``, ``p``) is a
vertex count, so each chain is checked on its integer grid.  Fractional
coefficients are cleared by scaling; no floating point is used.
"""

from __future__ import annotations

from collections.abc import Callable
from dataclasses import dataclass, field

__all__ = [
    "LedgerResult",
    "HESSIAN",
    "qp_objective",
    "check_case1_density",
    "check_case2_chain",
    "check_case3_chains",
    "check_hessian",
    "check_kkt",
    "check_qp_minimum",
    "check_case42",
    "run_ledger",
    "format_result",
    "integer_roots",
    "char_poly_3x3",
]

HESSIAN = ((2, -1, -1), (-1, 2, -1), (-1, -1, 2))


@dataclass
class LedgerResult:
    check_name: str
    grid_points_tested: int = 0
    violations: list[dict[str, int]] = field(default_factory=list)
    notes: dict[str, object] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return not self.violations

    def record(self, ok: bool, **point: int) -> None:
        self.grid_points_tested += 1
        if not ok:
            self.violations.append(point)


def format_result(r: LedgerResult) -> str:
    if r.passed:
        return f"PASS {r.check_name} points={r.grid_points_tested}"
    witness = ",".join(f"{k}={v}" for k, v in r.violations[0].items())
    return f"FAIL {r.check_name} witness={witness}"


def _need_positive(k_max: int) -> None:
    if k_max < 1:
        raise ValueError(f"k_max must be >= 1, got {k_max}")


def check_case1_density(k_max: int = 500) -> LedgerResult:
    """No room for the components when ``h1 >= k`` (``k >= n/2``, ``n`` even).

    With ``T`` empty, ``n >= 3(k^2+2) + k >= (3n^2 + 2n + 24)/4 > n``; with
    ``S`` nonempty, ``n >= 4k + 6 > n``.
    """
    _need_positive(k_max)
    res = LedgerResult("case1_density")
    for k in range(1, k_max + 1):
        for n in range(2, 2 * k + 1, 2):
            packed = 3 * (k * k + 2) + k
            ok = (
                packed > n
                and 4 * packed >= 3 * n * n + 2 * n + 24
                and 3 * n * n + 2 * n + 24 > 4 * n
                and 4 * k + 6 > n
            )
            res.record(ok, k=k, n=n)
    return res


def check_case2_chain(k_max: int = 500) -> LedgerResult:
    """``2k^2 + k - 3k h1 + h1^2 + h1 >= 3k`` for ``0 <= h1 <= k-1``.

    Also checks the expansion that produces the left side and the sign of
    the multiplier ``k(k+2-h1) - 1`` used in the chain.
    """
    _need_positive(k_max)
    res = LedgerResult("case2_chain")
    equality = []
    for k in range(1, k_max + 1):
        for h1 in range(k):
            lhs = 2 * k * k + k - 3 * k * h1 + h1 * h1 + h1
            expanded = 2 + k * k + 2 * (k * (k + 2 - h1) - 1) - k * (k + 3 + h1) + h1 * (h1 + 1)
            multiplier = k * (k + 2 - h1) - 1
            ok = lhs >= 3 * k and lhs == expanded and multiplier >= 3 * k - 1 >= 0
            res.record(ok, k=k, h1=h1)
            if lhs == 3 * k:
                equality.append((k, h1))
    res.notes["equality_points"] = len(equality)
    res.notes["equality_only_at_h1_eq_k_minus_1"] = all(h1 == k - 1 for k, h1 in equality)
    return res


def check_case3_chains(k_max: int = 500, q_max: int = 6) -> LedgerResult:
    """The two closing bounds when ``T`` has a non-neighbour of ``u1`` and ``h2 >= k``.

    ``h1^2 - (2k-1)h1 + k^2 + 2k >= 3k`` and ``(k-h1)(k-h1+5) > 0`` on
    ``0 <= h1 <= k-1``, with the identity and the ``q``-monotone steps
    leading to them checked for ``2 <= q <= q_max``.
    """
    _need_positive(k_max)
    res = LedgerResult("case3_chains")
    for k in range(1, k_max + 1):
        for h1 in range(k):
            quad = h1 * h1 - (2 * k - 1) * h1 + k * k + 2 * k
            ident = k * (3 + k - h1) + (h1 - k) * (h1 + 1) == quad
            last = (k - h1) * (k - h1 + 5)
            ok = quad >= 3 * k and ident and last > 0
            for q in range(2, q_max + 1):
                # 2 + k(3(q-1)+k-h1) + (h1-k)(h1+1) - q >= k(3+k-h1) + (h1-k)(h1+1)
                a = 2 + k * (3 * (q - 1) + k - h1) + (h1 - k) * (h1 + 1) - q
                # 2 + (k-h1)(k-h1+3q-1) - q >= (k-h1)(k-h1+5)
                b = 2 + (k - h1) * (k - h1 + 3 * q - 1) - q
                ok = ok and a >= quad and b >= last
            res.record(ok, k=k, h1=h1)
    return res


def char_poly_3x3(m) -> tuple[int, int, int, int]:
    """Coefficients of ``det(x I - m)`` from highest degree down."""
    (a, b, c), (d, e, f), (g, h, i) = m
    trace = a + e + i
    minors2 = (a * e - b * d) + (a * i - c * g) + (e * i - f * h)
    det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)
    return 1, -trace, minors2, -det


def integer_roots(coeffs: tuple[int, ...]) -> list[int]:
    """All integer roots, with multiplicity, of a monic integer polynomial."""
    coeffs = list(coeffs)
    roots = []
    while len(coeffs) > 1 and coeffs[-1] == 0:
        roots.append(0)
        coeffs.pop()
    while len(coeffs) > 1:
        const = abs(coeffs[-1])
        found = None
        for d in range(1, const + 1):
            if const % d:
                continue
            for r in (d, -d):
                acc = 0
                for c in coeffs:
                    acc = acc * r + c
                if acc == 0:
                    found = r
                    break
            if found is not None:
                break
        if found is None:
            break
        # synthetic division
        out = [coeffs[0]]
        for c in coeffs[1:-1]:
            out.append(c + out[-1] * found)
        coeffs = out
        roots.append(found)
    return sorted(roots)


def qp_objective(h1: int, h2: int, k: int) -> int:
    return h1 * h1 - h1 * (k - 1 + h2) + h2 * h2 + (1 - k) * h2 + k * k - 2 * k + 2


def _hessian_by_differences(f: Callable[[int, int, int], int], at=(0, 0, 0)) -> list[list[int]]:
    # second differences of a quadratic are exact and constant
    out = [[0] * 3 for _ in range(3)]
    for i in range(3):
        for j in range(3):
            ei = [int(t == i) for t in range(3)]
            ej = [int(t == j) for t in range(3)]
            x = list(at)

            def ev(di: int, dj: int) -> int:
                p = [x[t] + di * ei[t] + dj * ej[t] for t in range(3)]
                return f(*p)

            out[i][j] = ev(1, 1) - ev(1, 0) - ev(0, 1) + ev(0, 0)
    return out


def check_hessian() -> LedgerResult:
    """Eigenvalues of the objective's Hessian are exactly ``{0, 3, 3}``."""
    res = LedgerResult("hessian")
    derived = _hessian_by_differences(qp_objective, at=(3, -2, 5))
    res.record(derived == [list(r) for r in HESSIAN], step=0)
    poly = char_poly_3x3(HESSIAN)
    res.record(poly == (1, -6, 9, 0), step=1)
    roots = integer_roots(poly)
    res.record(roots == [0, 3, 3], step=2)
    m = HESSIAN
    principal = [m[0][0], m[1][1], m[2][2]]
    for a, b in ((0, 1), (0, 2), (1, 2)):
        principal.append(m[a][a] * m[b][b] - m[a][b] * m[b][a])
    principal.append(-poly[3])  # det(M)
    res.record(all(x >= 0 for x in principal), step=3)
    res.notes.update(eigenvalues=roots, trace=-poly[1], det=-poly[3], principal_minors=principal)
    return res


def _kkt_residuals(h1: int, h2: int, k: int, l1: int, l2: int, l3: int) -> tuple[int, ...]:
    return (
        2 * h1 - (k - 1 + h2) + l1 - l3,
        -h1 + 2 * h2 + (1 - k) - l1 + l2,
        -h1 - h2 + 2 * k - 2 - l2,
        l1 * (h1 - h2),
        l2 * (h2 - k + 1),
        l3 * h1,
    )


def check_kkt(k_max: int = 500) -> LedgerResult:
    """``h1 = h2 = k-1`` with zero multipliers solves the KKT system for every ``k``.

    The stationarity rows are compared with the Lagrangian gradient taken by
    exact central differences, so a transcription error in either shows up.
    """
    _need_positive(k_max)
    res = LedgerResult("kkt")
    for k in range(1, k_max + 1):
        h1 = h2 = k - 1
        lam = (0, 0, 0)
        r = _kkt_residuals(h1, h2, k, *lam)

        def lagrangian(a: int, b: int, c: int) -> int:
            return qp_objective(a, b, c) + lam[0] * (a - b) + lam[1] * (b - c + 1) - lam[2] * a

        point = [h1, h2, k]
        grad = []
        for i in range(3):
            up = point[:]
            dn = point[:]
            up[i] += 1
            dn[i] -= 1
            diff = lagrangian(*up) - lagrangian(*dn)
            grad.append(diff // 2 if diff % 2 == 0 else None)
        feasible = h1 - h2 <= 0 and h2 <= k - 1 and -h1 <= 0
        ok = all(x == 0 for x in r) and grad == list(r[:3]) and feasible and min(lam) >= 0
        res.record(ok, k=k)
    return res


def check_qp_minimum(k_max: int = 200) -> LedgerResult:
    """Integer-grid minimum of the objective over ``0 <= h1 <= h2 <= k-1`` is 1 at ``(k-1, k-1)``."""
    _need_positive(k_max)
    res = LedgerResult("qp_minimum")
    for k in range(1, k_max + 1):
        best = None
        arg = None
        for h2 in range(k):
            for h1 in range(h2 + 1):
                v = qp_objective(h1, h2, k)
                if best is None or v < best:
                    best, arg = v, (h1, h2)
        kkt_value = qp_objective(k - 1, k - 1, k)
        ok = best == 1 and arg == (k - 1, k - 1) and kkt_value == best
        res.record(ok, k=k)
    return res


def check_case42(m_range: int = 10**6) -> LedgerResult:
    """``(3/4)m^2 - 2m + 3 > 0`` for ``m = n - k >= 1`` (scaled: ``3m^2 - 8m + 12 > 0``).

    Also checks the completed-square identity feeding it,
    ``4(2k^2 - kn) - (3k - n)^2 = -(n - k)^2``, on ``1 <= k < n <= 60``.
    """
    if m_range < 1:
        raise ValueError(f"range must be >= 1, got {m_range}")
    res = LedgerResult("case42")
    for m in range(1, m_range + 1):
        scaled = 3 * m * m - 8 * m + 12
        if scaled <= 0 or -(m * m) + 4 * (m - 1) ** 2 + 8 != scaled:
            res.violations.append({"m": m})
    res.grid_points_tested += m_range
    for n in range(2, 61):
        for k in range(1, n):
            res.record(4 * (2 * k * k - k * n) - (3 * k - n) ** 2 == -((n - k) ** 2), n=n, k=k)
    disc = 8 * 8 - 4 * 3 * 12
    res.record(disc < 0, discriminant=disc)
    res.notes["discriminant"] = disc
    return res


def run_ledger(k_max: int = 500, qp_k_max: int = 200, m_range: int = 10**6) -> list[LedgerResult]:
    return [
        check_case1_density(k_max),
        check_case2_chain(k_max),
        check_case3_chains(k_max),
        check_hessian(),
        check_kkt(k_max),
        check_qp_minimum(qp_k_max),
        check_case42(m_range),
    ]
