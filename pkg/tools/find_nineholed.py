"""Search for the 9-holed torus relation by incremental hole lifting.

Start from (t_x t_y^3)^3 = t_d on the one-holed torus and add pockets one at
a time; at each stage the previous letters lift verbatim and windings of the
new pocket generator are inserted so the product equals the full boundary
multitwist.  Any insertion pattern caps back to the verified previous stage,
so each verified stage is sound on its own."""

import itertools
import json
import random
import sys
import time

import numpy as np

sys.setrecursionlimit(10000)

from lefpen.surface import canonical_triangulation
from lefpen.curves import Curve, boundary_curve
from lefpen.mcg import MappingClass, twist_word
from lefpen import words as W

random.seed(23)


def ksize(mc):
    sig = mc.signature_data()
    n = sum(len(w) for w in sig[1]) - len(sig[1])
    n += sum(len(w) for w in sig[2])
    return n


def run_stage(words, b, budget):
    tri = canonical_triangulation(1, b)
    rank = tri.model.rank
    gnew = rank  # newest pocket generator
    rhs = twist_word(tri, *[boundary_curve(tri, j) for j in range(1, b + 1)])
    rhs_inv = rhs.inverse()
    ccache = {}

    def curve(w):
        if w not in ccache:
            ccache[w] = Curve(tri, w, check=False)
        return ccache[w]

    def simple_ok(w):
        try:
            Curve(tri, w)
            return True
        except Exception:
            return False

    def objective(ws):
        K = twist_word(tri, *[curve(w) for w in ws]) * rhs_inv
        return ksize(K)

    def variants(w, allow_delete=True):
        """Single-modification variants of one letter involving gnew."""
        out = []
        L = len(w)
        for p in range(L + 1):
            for s in (gnew, -gnew):
                w2 = W.reduce_word(w[:p] + (s,) + w[p:])
                if len(w2) == L + 1 and simple_ok(w2):
                    out.append(w2)
        if allow_delete:
            for p in range(L):
                if abs(w[p]) == gnew:
                    w2 = W.reduce_word(w[:p] + w[p + 1:])
                    if w2 and simple_ok(w2):
                        out.append(w2)
        return out

    # ---- phase 1: brute mini-search over <= 3 modified letters, numpy filter
    def tmat(word):
        v = np.zeros(rank, dtype=np.int64)
        for x in word:
            v[abs(x) - 1] += 1 if x > 0 else -1
        u = np.zeros(rank, dtype=np.int64)
        u[0] = v[1]
        u[1] = -v[0]
        return np.eye(rank, dtype=np.int64) + np.outer(v, u)

    base_mats = [tmat(w) for w in words]
    n = len(words)
    prefix = [np.eye(rank, dtype=np.int64)]
    for M in base_mats:
        prefix.append(prefix[-1] @ M)
    suffix = [np.eye(rank, dtype=np.int64)] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = base_mats[i] @ suffix[i + 1]

    I = np.eye(rank, dtype=np.int64)
    letter_vars = [variants(w, allow_delete=False) for w in words]

    def sp_ok(mods):
        mats = list(base_mats)
        for (i, w2) in mods:
            mats[i] = tmat(w2)
        M = I
        for A in mats:
            M = M @ A
        return np.array_equal(M, I)

    t0 = time.time()
    for nmod in (1, 2, 3):
        hits = []
        for combo in itertools.combinations(range(n), nmod):
            pools = [letter_vars[i] for i in combo]
            for choice in itertools.product(*pools):
                mods = list(zip(combo, choice))
                if sp_ok(mods):
                    hits.append(mods)
            if time.time() - t0 > budget / 3:
                break
        # engine-verify homology hits, preferring shortest total insertion
        hits.sort(key=lambda ms: sum(len(w) for _, w in ms))
        for mods in hits:
            trial = list(words)
            for (i, w2) in mods:
                trial[i] = w2
            if objective(trial) == 0:
                return trial, 0
        if time.time() - t0 > budget / 2:
            break

    # ---- phase 2: greedy climb with restarts from best state
    def climb(start, deadline):
        cur = list(start)
        best_state = list(cur)
        best = objective(cur)
        cur_val = best
        stall = 0
        while best > 0 and time.time() < deadline:
            moves = []
            for i, w in enumerate(cur):
                for w2 in variants(w):
                    moves.append((i, w2))
            random.shuffle(moves)
            improved = False
            for (i, w2) in moves:
                trial = list(cur)
                trial[i] = w2
                v = objective(trial)
                if v < cur_val:
                    cur, cur_val = trial, v
                    improved = True
                    if v < best:
                        best, best_state = v, list(trial)
                    break
            if not improved:
                stall += 1
                cur = list(best_state)
                cur_val = best
                for _ in range(min(3, 1 + stall // 2)):
                    i, w2 = random.choice(moves)
                    cur[i] = w2
                cur_val = objective(cur)
        return best_state, best

    deadline = t0 + budget
    state, val = climb(words, deadline)
    return state, val


def cleanup(words, b, budget):
    """Shorten letters while keeping the relation exact."""
    tri = canonical_triangulation(1, b)
    rhs = twist_word(tri, *[boundary_curve(tri, j) for j in range(1, b + 1)])
    rhs_inv = rhs.inverse()
    ccache = {}

    def curve(w):
        if w not in ccache:
            ccache[w] = Curve(tri, w, check=False)
        return ccache[w]

    def exact(ws):
        return ksize(twist_word(tri, *[curve(w) for w in ws]) * rhs_inv) == 0

    def short_variants(w):
        out = []
        for p in range(len(w)):
            w2 = W.reduce_word(w[:p] + w[p + 1:])
            if w2:
                try:
                    Curve(tri, w2)
                    out.append(w2)
                except Exception:
                    pass
        return out

    t0 = time.time()
    cur = list(words)
    changed = True
    while changed and time.time() - t0 < budget:
        changed = False
        for i in range(len(cur)):
            for w2 in short_variants(cur[i]):
                trial = list(cur)
                trial[i] = w2
                if exact(trial):
                    cur = trial
                    changed = True
                    break
    return cur


def main():
    words = [(1,), (2,), (2,), (2,), (1,), (2,), (2,), (2,), (1,), (2,), (2,), (2,)]
    for b in range(2, 10):
        print("== lifting to Sigma_1^%d" % b, flush=True)
        words, val = run_stage(words, b, budget=600.0)
        if val != 0:
            print("STUCK at b=%d with size %d" % (b, val))
            print("state:", words)
            json.dump({"b": b, "words": [list(w) for w in words], "size": val},
                      open("/tmp/nineholed_stuck.json", "w"))
            return
        words = cleanup(words, b, budget=120.0)
        print("   ok:", words, flush=True)
        json.dump({"b": b, "words": [list(w) for w in words]},
                  open("/tmp/nineholed_b%d.json" % b, "w"))
    print("DONE")
    json.dump([list(w) for w in words], open("/tmp/nineholed_words.json", "w"))


if __name__ == "__main__":
    main()
