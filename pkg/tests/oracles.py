"""Reference computations written without the package's arithmetic."""

import itertools


def digits(F, n):
    """theta_k = coefficient of X^-k, k = 1..n (F is read, nothing else is used)."""
    return [F.coefficient(-k) for k in range(1, n + 1)]


def frac_log2(q, th, p, known):
    """log2 of the fractional norm of q*theta from raw digits; q constant-first.

    Coefficient of X^-j in q*theta is sum_i q_i theta_{i+j}.  Returns
    (exponent, resolved) where resolved is False when all known digits vanish.
    """
    d = len(q) - 1
    for j in range(1, known - d + 1):
        c = sum(q[i] * th[i + j - 1] for i in range(d + 1)) % p
        if c:
            return -j, True
    return -(known - d) - 1, False


def poly_str(q, p):
    # mirrors the package's canonical form: "2*X^2+X+1"
    parts = []
    for e in range(len(q) - 1, -1, -1):
        c = q[e]
        if not c:
            continue
        if e == 0:
            parts.append(str(c))
            continue
        mono = "X" if e == 1 else f"X^{e}"
        parts.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(parts) or "0"


def brute_scan(theta, phi, D, known):
    """(min1, argmin1, min2, argmin2, all_resolved) over monic q of degree <= D."""
    p = theta.p
    t1, t2 = digits(theta, known), digits(phi, known)
    best1 = best2 = None
    resolved = True
    for d in range(D + 1):
        for low in itertools.product(range(p), repeat=d):
            q = list(low) + [1]
            e1, r1 = frac_log2(q, t1, p, known)
            e2, r2 = frac_log2(q, t2, p, known)
            resolved &= r1 and r2
            v1 = d + e1 + e2
            name = poly_str(q, p)
            if best1 is None or (v1, name) < best1:
                best1 = (v1, name)
            if best2 is None or (v1 + d, name) < best2:
                best2 = (v1 + d, name)
    return best1[0], best1[1], best2[0], best2[1], resolved
