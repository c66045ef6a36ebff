"""
Blocking words and equicontinuity
=================================

A word is strongly blocking when some of its columns follow a fixed
trajectory no matter what happens outside it. Certificates come from the
reachable sets of the word under adversarial boundaries.
"""
from nuca import EpConfig, LocalRule, NuCaSpec, iterate
from nuca.dynamics import certify_strongly_blocking, classify_ca, classify_nuca, refute_blocking
from nuca.zoo import F9, SPREAD2, zoo_entry

# a single 2 blocks the spread-2 rule: it stays 2 forever
cert = certify_strongly_blocking(SPREAD2, "2", 1)
print(cert.to_json())
print(classify_ca(SPREAD2).describe())

# identity is equicontinuous, the shift has no blocking word of length <= 4
print(classify_ca(LocalRule.identity(2)).describe())
print(classify_ca(LocalRule.shift(2)).describe())

# the shift loses every column to information arriving from the right
ref = refute_blocking(LocalRule.shift(2), "00", 1, horizon=3, padding=3)
print(ref.pairs)

# 202 under F9: blocking for the uniform CA, but not strongly blocking
print(certify_strongly_blocking(F9, "202", 1))
print(refute_blocking(F9, "202", 1))

# a frozen 1 just left of the word moves every one of its columns
spec = NuCaSpec.with_default(F9, {-1: LocalRule.identity(3)})
x = EpConfig.finite(0, b"\x01\x02\x00\x02", -1)
for t in range(8):
    print(t, iterate(spec, x, t).window(0, 2).hex())

# the frozen-2 automaton inherits almost equicontinuity from its default rule
print(classify_nuca(zoo_entry("z8b").spec).describe())
