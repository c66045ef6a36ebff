"""
Deciding surjectivity and injectivity
=====================================

The deciders build the De Bruijn graph of a spec (after packing it into
period-1 tails) and answer exactly. Negative answers carry witnesses
that can be checked independently.
"""
from nuca import decide_injective, decide_surjective, step
from nuca.oracles import has_preimage, injectivity_witness_oracle, surjectivity_oracle
from nuca.zoo import zoo_catalog, zoo_entry

for entry in zoo_catalog():
    s = decide_surjective(entry.spec)
    i = decide_injective(entry.spec)
    print(f"{entry.name:9s} {s.line():40s} {i.line()}")

# z4 shifts right everywhere except at the origin, which keeps its value
z4 = zoo_entry("z4").spec
s = decide_surjective(z4)
# the witness word has no preimage at its position
print(s.word, s.position, has_preimage(z4, s.word, s.position))

# the colliding pair really collides
x, y = decide_injective(z4).witness
print(x, y, step(z4, x) == step(z4, y))

# brute force says the same thing without looking at any graph
print(surjectivity_oracle(z4, 4).line())
print(injectivity_witness_oracle(z4) is not None)

# shift toward the center loses the value at the origin but never merges two configurations
z2 = zoo_entry("z2").spec
print(decide_surjective(z2).line(), decide_injective(z2).line())
