#!/usr/bin/env python3
"""Generate the per-window comparator network used by the 5x5 median filter.

Input wires are k*5 + c where column c (0..4) of the window has already been
sorted so that wire k*5 + c holds its k-th smallest value. The emitted network
leaves the median of all 25 values on MEDIAN_WIRE. Correctness is checked with
the 0-1 principle over every column-sorted binary window (6^5 cases).
"""
import itertools
import sys

SORT5 = [(0, 1), (3, 4), (2, 4), (2, 3), (0, 3), (0, 2), (1, 4), (1, 3), (1, 2)]


def batcher(n):
    """Odd-even merge sort comparators for n = power of two."""
    out = []

    def merge(lo, cnt, r):
        step = r * 2
        if step < cnt:
            merge(lo, cnt, step)
            merge(lo + r, cnt, step)
            for i in range(lo + r, lo + cnt - r, step):
                out.append((i, i + r))
        else:
            out.append((lo, lo + r))

    def sort(lo, cnt):
        if cnt > 1:
            m = cnt // 2
            sort(lo, m)
            sort(lo + m, m)
            merge(lo, cnt, 1)

    sort(0, n)
    return out


def build():
    net = []
    # Sort each rank-row across the five columns.
    for k in range(5):
        net += [(k * 5 + a, k * 5 + b) for a, b in SORT5]
    # Candidates of a bi-sorted 5x5 matrix for the rank-13 element.
    cands = [(i, j) for i in range(5) for j in range(5)
             if (i + 1) * (j + 1) <= 13 and (5 - i) * (5 - j) <= 13]
    assert len(cands) == 13
    wires = [i * 5 + j for i, j in cands]
    # Sort the 13 candidates with a 16-wire Batcher network; the three
    # padding wires are +inf and sit at the top.
    pad = [None, None, None]
    slots = wires + pad
    for a, b in batcher(16):
        wa, wb = slots[a], slots[b]
        if wa is None and wb is None:
            continue
        if wb is None:
            continue  # hi side is +inf: no-op
        if wa is None:
            slots[a], slots[b] = wb, None  # swap labels
            continue
        net.append((wa, wb))
    return net, slots[6]


def evaluate(net, out, case):
    v = list(case)
    for a, b in net:
        if v[a] > v[b]:
            v[a], v[b] = v[b], v[a]
    return v[out]


def cases():
    for ones in itertools.product(range(6), repeat=5):
        v = [0] * 25
        for c, n in enumerate(ones):
            for k in range(5 - n, 5):
                v[k * 5 + c] = 1
        yield v, int(sum(ones) >= 13)


def correct(net, out, all_cases):
    return all(evaluate(net, out, v) == m for v, m in all_cases)


def prune(net, out):
    # Drop comparators that cannot influence the output wire.
    live = {out}
    kept = []
    for a, b in reversed(net):
        if a in live or b in live:
            kept.append((a, b))
            live |= {a, b}
    return list(reversed(kept))


def main():
    net, out = build()
    net = prune(net, out)
    all_cases = list(cases())
    assert correct(net, out, all_cases)
    i = 0
    while i < len(net):
        trial = net[:i] + net[i + 1:]
        if correct(trial, out, all_cases):
            net = prune(trial, out)
        else:
            i += 1
    assert correct(net, out, all_cases)
    w = sys.stdout.write
    w("// Generated by tools/gen_median25.py; do not edit.\n")
    w(f"inline constexpr int kMedian25Wire = {out};\n")
    w(f"inline constexpr std::array<std::pair<int, int>, {len(net)}> kMedian25Network = {{{{\n")
    for j in range(0, len(net), 6):
        w("    " + " ".join(f"{{{a}, {b}}}," for a, b in net[j:j + 6]) + "\n")
    w("}};\n")


if __name__ == "__main__":
    main()
