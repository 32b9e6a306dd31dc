"""Script to compare the single and multi flip correction of the built-in layouts"""

import pandas as pd

import hamsim

from hamsim.faults import default_catalog
from hamsim.reliability import calibrate_lambda

geom = hamsim.MemoryGeometry(rows=8, cols=32)
catalog = default_catalog()

results = [hamsim.run_campaign(x, catalog, geom) for x in hamsim.builtin_layouts()]

rows = []
for aResult in results:
    for group, tally in aResult.per_group.items():
        rows.append(dict(layout=aResult.layout, group=group, **tally.rates()))

rates = pd.DataFrame(rows).pivot(index="layout", columns="group", values="dc")
print("DC rate per group (%)")
print(rates.round(1))

# bit fault rate that gives the longest code 71.43 % reliability at t = 500
fcTables = {r.layout: hamsim.fc_table_from_campaign(r) for r in results}
lam = calibrate_lambda(fcTables["Ham31,26"], 500.0, 0.7143)

tGrid = [0, 250, 500, 1000, 2000, 3500]
curves = pd.DataFrame({"t": tGrid})
for name, table in fcTables.items():
    rel = hamsim.ReliabilityInput(lam=lam, fc_table=table)
    curves[name] = [hamsim.reliability(rel, t) for t in tGrid]

print("\nReliability with lambda = %.3g" % lam)
print(curves.round(4).to_string(index=False))
