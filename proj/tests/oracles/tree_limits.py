"""Tree walk f statistics at high precision.

Independent of the C++ log-space recursion: tracks per-vertex masses
m_t(r) = q_t(r) / N(r) directly with 60-digit mpmath arithmetic.
Prints the gaps |E f^{1/2} - rho_d| and |E(-log f) - h_d| at the requested times.
"""
import sys
from mpmath import mp, mpf, sqrt, log

mp.dps = 60


def run(d, times):
    d = mpf(d)
    rho_d = 2 * sqrt(d - 1) / d
    h_d = (d - 2) * log(d - 1) / d
    m = [mpf(1)]  # per-vertex mass by radius
    out = {}
    for t in range(1, max(times) + 1):
        # Pull form: the root has d children; any other vertex has one
        # parent and d - 1 children.
        get = lambda r: m[r] if 0 <= r < len(m) else mpf(0)
        new = [get(1)] + [(get(r - 1) + (d - 1) * get(r + 1)) / d for r in range(1, t + 1)]
        e_sqrt = mpf(0)
        e_nlog = mpf(0)
        for r, x in enumerate(m):
            if x == 0:
                continue
            size = 1 if r == 0 else d * (d - 1) ** (r - 1)
            mass = x * size
            moves = [(1, mass)] if r == 0 else [(r + 1, mass * (d - 1) / d), (r - 1, mass / d)]
            for r2, w in moves:
                f = new[r2] / x
                e_sqrt += w * sqrt(f)
                e_nlog -= w * log(f)
        m = new
        if t in times:
            out[t] = (abs(e_sqrt - rho_d), abs(e_nlog - h_d), e_sqrt, e_nlog)
    return out


if __name__ == "__main__":
    times = [int(x) for x in sys.argv[1:]] or [100, 1000]
    for d in (3, 6):
        for t, (g_sqrt, g_log, s, l) in sorted(run(d, set(times)).items()):
            print(f"d={d} t={t} sqrt_gap={mp.nstr(g_sqrt, 17)} log_gap={mp.nstr(g_log, 17)} "
                  f"e_sqrt_f={mp.nstr(s, 17)} e_neg_log_f={mp.nstr(l, 17)}")
