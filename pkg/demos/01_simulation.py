"""
Simulating a non-uniform automaton
==================================

Configurations are bi-infinite but eventually periodic, so a finite
literal ``left*|center@offset|right*`` describes one exactly and every
step is computed without truncation.
"""
import tempfile
from pathlib import Path

from nuca import iterate, orbit_analyze, parse_config, step, trace
from nuca.zoo import zoo_entry

# the spread-2 rule everywhere, with cell 0 forced to 2
z8b = zoo_entry("z8b").spec
x = parse_config("0*|10@0|0*")
print(z8b.class_of().name)

# one step at a time: the 2 planted at the origin floods outwards
for t in range(4):
    print(t, iterate(z8b, x, t))

# a space-time diagram of cells -10..10 over 12 steps
tr = trace(z8b, x, -10, 10, 12)
print(tr.text())

# the flood never stops, so the orbit is not ultimately periodic
rep = orbit_analyze(z8b, x, max_steps=100)
print("ultimately periodic:", rep.ultimately_periodic, "stopped by", rep.exceeded)

# the identity rule freezes everything: period 1 from the start
ident = zoo_entry("identity").spec
rep = orbit_analyze(ident, parse_config("01*|1101@-2|0*"))
print("preperiod", rep.preperiod, "period", rep.period)

# diagrams are written as binary PGM
out = Path(tempfile.gettempdir()) / "z8b_flood.pgm"
tr.save_pgm(out, z8b.q)
print("wrote", out)

# a step is the same object whatever encoding the input had
assert step(z8b, parse_config("00*|0010@-2|00*")) == step(z8b, parse_config("0*|1@0|0*"))
