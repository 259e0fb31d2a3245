"""Independent numerical checks used by the test suite.

The schedule integrator walks a profile's constant-jerk segments in small dt
steps, accumulating position and velocity numerically instead of evaluating
the implementation's closed-form polynomials. Per-step updates are exact for
constant jerk, so any disagreement beyond float accumulation points at the
implementation's segment or polynomial algebra.

The bang-bang integrator is a second, fully rule-based oracle for
trapezoidal moves: it knows nothing about segment times and decides to brake
purely from the remaining-distance rule, so it independently validates the
schedule shape (at the coarser accuracy its discrete switching allows).
"""
from __future__ import annotations

import math

import numpy as np


def integrate_schedule(segments, sign, queries, dt=1e-6):
    """Numerically integrate [(duration, a0, jerk)] segments from rest.

    Returns (positions at query times, terminal position, max |velocity|).
    Query times beyond the schedule hold the terminal state. ``sign`` maps
    the distance-space result onto the commanded direction.
    """
    queries = sorted(float(q) for q in queries)
    out = {}
    p = v = 0.0
    t_start = 0.0
    vmax_seen = 0.0
    qi = 0
    # Answer queries at or before t=0 immediately.
    while qi < len(queries) and queries[qi] <= 0.0:
        out[queries[qi]] = 0.0
        qi += 1
    for dur, a0, j in segments:
        t_end = t_start + dur
        seg_queries = []
        while qi < len(queries) and queries[qi] <= t_end + 1e-15:
            # Keep the original float for the result key.
            seg_queries.append((queries[qi] - t_start, queries[qi]))
            qi += 1
        p, v, seg_vmax = _integrate_segment(
            p, v, a0, j, dur, dt, seg_queries, out)
        vmax_seen = max(vmax_seen, seg_vmax)
        t_start = t_end
    for q in queries[qi:]:
        out[q] = p
    return {t: sign * pq for t, pq in out.items()}, sign * p, vmax_seen


def _integrate_segment(p0, v0, a0, j, dur, dt, queries, out):
    """March one constant-jerk segment with exact per-step updates."""
    n_full = int(math.floor(dur / dt + 1e-12))
    rem = dur - n_full * dt
    q_steps = []
    for tq, orig in queries:
        nq = int(math.floor(tq / dt + 1e-12))
        rq = tq - nq * dt
        q_steps.append((min(nq, n_full), rq, orig))

    chunk = 1_000_000
    p, v = p0, v0
    done_steps = 0
    vmax_seen = abs(v0)
    pending = sorted(q_steps)
    pi = 0
    while done_steps < n_full or pi < len(pending):
        n = min(chunk, n_full - done_steps)
        if n <= 0 and pi < len(pending):
            # Remaining queries fall exactly at the accumulated boundary.
            while pi < len(pending):
                nq, rq, tq = pending[pi]
                if nq > done_steps:
                    break
                a_here = a0 + j * (nq * dt)
                pq = p + v * rq + 0.5 * a_here * rq * rq + j * rq ** 3 / 6.0
                out[tq] = pq
                pi += 1
            break
        k = np.arange(n, dtype=np.float64)
        t_k = (done_steps + k) * dt
        a_k = a0 + j * t_k
        dv = a_k * dt + 0.5 * j * dt * dt
        v_k = v + np.concatenate(([0.0], np.cumsum(dv)[:-1]))
        dp = v_k * dt + 0.5 * a_k * dt * dt + j * dt ** 3 / 6.0
        p_k = p + np.cumsum(dp)
        v_after = v + np.cumsum(dv)
        vmax_seen = max(vmax_seen, float(np.max(np.abs(v_after))),
                        float(np.max(np.abs(v_k))))
        while pi < len(pending):
            nq, rq, tq = pending[pi]
            if nq >= done_steps + n:
                break
            if nq == done_steps:
                pq_base, vq_base = p, v
            else:
                local = nq - done_steps - 1
                pq_base, vq_base = float(p_k[local]), float(v_after[local])
            a_here = a0 + j * (nq * dt)
            pq = pq_base + vq_base * rq + 0.5 * a_here * rq * rq + j * rq ** 3 / 6.0
            out[tq] = pq
            pi += 1
        p = float(p_k[-1]) if n > 0 else p
        v = float(v_after[-1]) if n > 0 else v
        done_steps += n
    # Final partial step to land exactly on the segment boundary.
    a_here = a0 + j * (n_full * dt)
    p = p + v * rem + 0.5 * a_here * rem * rem + j * rem ** 3 / 6.0
    v = v + a_here * rem + 0.5 * j * rem * rem
    for nq, rq, tq in pending[pi:]:
        emit(tq, p)
    vmax_seen = max(vmax_seen, abs(v))
    return p, v, vmax_seen


def bang_bang_trapezoid(dist, v_lim, a1, a2, dt=1e-5):
    """Rule-based trapezoid integration, independent of any schedule.

    Accelerate at a1 toward v_lim; start braking at a2 as soon as the
    remaining distance no longer covers the stopping distance. Returns
    (terminal_time, terminal_position, max_velocity).
    """
    p, v, t = 0.0, 0.0, 0.0
    vmax_seen = 0.0
    guard = 0
    while True:
        remaining = dist - p
        if remaining <= 0.0 and v <= 1e-9:
            break
        if v * v / (2.0 * a2) >= remaining - 1e-15:
            a = -a2
        elif v < v_lim:
            a = a1
        else:
            a = 0.0
        v_new = max(0.0, min(v + a * dt, v_lim))
        a_eff = (v_new - v) / dt
        p += v * dt + 0.5 * a_eff * dt * dt
        v = v_new
        t += dt
        vmax_seen = max(vmax_seen, v)
        guard += 1
        if guard > 50_000_000:
            raise RuntimeError("bang-bang oracle did not converge")
    return t, p, vmax_seen
