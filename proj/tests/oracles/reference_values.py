#!/usr/bin/env python3
# Copyright 2026 The sbmrd Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
"""Independent high-precision reference values frozen into the C++ tests.

Everything here is evaluated with mpmath at 40 digits directly from the
defining sums, without going through the library. Water levels are found by
brute-force bisection on the clipped sum, never by the sorted-breakpoint
algebra the library uses.
"""

import itertools

import mpmath as mp

mp.mp.dps = 40

BLOCK3_P = [mp.mpf("0.4"), mp.mpf("0.3"), mp.mpf("0.3")]
BLOCK3_W = [[mp.mpf(x) for x in row] for row in
          (["0.5", "0.2", "0.1"], ["0.2", "0.5", "0.1"], ["0.1", "0.1", "0.4"])]


def h2(t):
    t = mp.mpf(t)
    if t == 0 or t == 1:
        return mp.mpf(0)
    return -t * mp.log(t, 2) - (1 - t) * mp.log(1 - t, 2)


def shannon(p):
    return sum(-x * mp.log(x, 2) for x in p if x > 0)


def qform(p, m):
    return sum(p[l] * p[r] * m[l][r] for l in range(len(p)) for r in range(len(p)))


def water_level(caps, weights, target):
    lo, hi = mp.mpf(0), mp.mpf("0.5")
    for _ in range(200):
        mid = (lo + hi) / 2
        if sum(w * min(c, mid) for c, w in zip(caps, weights)) < target:
            lo = mid
        else:
            hi = mid
    return hi


def sbm_conditional_rate(n, p, w, dist):
    pairs = n * (n - 1) / 2
    k = len(p)
    caps, weights = [], []
    for l, r in itertools.product(range(k), repeat=2):
        caps.append(min(w[l][r], 1 - w[l][r]))
        weights.append(p[l] * p[r])
    mu = water_level(caps, weights, mp.mpf(dist) / pairs)
    rate = 0
    for (l, r), c, wt in zip(itertools.product(range(k), repeat=2), caps, weights):
        rate += wt * (h2(w[l][r]) - h2(min(c, mu)))
    return pairs * rate, mu


def main():
    out = {}
    out["h2(0.2)"] = h2("0.2")
    out["h2(0.1)"] = h2("0.1")
    out["h2(0.075)"] = h2("0.075")
    out["block3 pT h2(W) p"] = qform(BLOCK3_P, [[h2(x) for x in row] for row in BLOCK3_W])
    out["block3 H(p)"] = shannon(BLOCK3_P)
    out["block3 cond entropy"] = 4950 * out["block3 pT h2(W) p"]
    out["block3 sum ppw"] = qform(BLOCK3_P, BLOCK3_W)
    out["block3 boundary"] = 4950 * qform(
        BLOCK3_P, [[min(x, 1 - x) for x in row] for row in BLOCK3_W])
    rate, mu = sbm_conditional_rate(100, BLOCK3_P, BLOCK3_W, 495)
    out["block3 rate(495)"] = rate
    out["block3 mu(495)"] = mu
    rate, mu = sbm_conditional_rate(100, BLOCK3_P, BLOCK3_W, 200)
    out["block3 rate(200)"] = rate
    out["block3 mu(200)"] = mu
    rate, mu = sbm_conditional_rate(100, BLOCK3_P, BLOCK3_W, 1000)
    out["block3 rate(1000)"] = rate
    out["block3 mu(1000)"] = mu
    out["inhom n=3 {0.1,0.2,0.5} entropy"] = h2("0.1") + h2("0.2") + h2("0.5")
    caps = [mp.mpf("0.05"), mp.mpf("0.3"), mp.mpf("0.5")]
    lam = water_level(caps, [1, 1, 1], mp.mpf("0.2"))
    out["inhom (0.05,0.3,0.5) lambda(0.2)"] = lam
    out["inhom (0.05,0.3,0.5) rate(0.2)"] = sum(h2(c) - h2(min(c, lam)) for c in caps)
    out["er n=2 p=0.2 rate(0.1)"] = h2("0.2") - h2("0.1")
    small_p = [mp.mpf("0.5"), mp.mpf("0.5")]
    small_w = [[mp.mpf("0.3"), mp.mpf("0.1")], [mp.mpf("0.1"), mp.mpf("0.4")]]
    rate, mu = sbm_conditional_rate(3, small_p, small_w, mp.mpf("0.3"))
    out["small sbm rate(0.3)"] = rate
    out["small sbm mu(0.3)"] = mu
    for key, val in out.items():
        print(f"{key:40s} {mp.nstr(val, 17)}")


if __name__ == "__main__":
    main()
