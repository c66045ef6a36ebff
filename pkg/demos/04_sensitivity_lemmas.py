"""
Sensitivity of F9 with a frozen 1
=================================

Cell 1 of the one-sided configurations ``u 0...`` settles on 1, while
``u 2...`` keeps bringing a 2 back to cell 1. The rewriting system on
words and flags tracks the left end of the evolution.
"""
import itertools

from nuca.zoo import RewriteState, regle3_sequence, rewrite_run, rewrite_step, sens1_check, sens2_times

state = RewriteState(b"\x02", 0)
while state != RewriteState(b"", 1):
    print(state)
    state = rewrite_step(state)
print(state)

# every short word reaches (ε, 1)
longest = max(rewrite_run(RewriteState(bytes(w), f)) for n in range(5) for w in itertools.product(range(3), repeat=n) for f in (0, 1))
print("longest run:", longest)
print("u^(m) = 1...1 for u = ε at m =", regle3_sequence(""))

# the two extensions of each short word separate at cell 1
for w in [b"", b"\x01", b"\x02\x00"]:
    n0 = sens1_check(w)
    print(w.hex() or "ε", "cell 1 is 1 from", n0, "and 2 again at", sens2_times(w, count=3))
