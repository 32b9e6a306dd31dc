# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Reports

 Campaign and reliability results as JSON documents, and CSV tables rendered
 from those documents. CSV percentages carry one decimal (rounded half up)
 next to the exact tallies; JSON keeps full precision.
"""

import os
import re
import json
import logging

from decimal import Decimal, ROUND_HALF_UP

import pandas as pd

from .campaign import CampaignResult, Counting, Policy, Tally
from .reliability import redundancy_rate

logger = logging.getLogger(__name__)

RATE_KEYS = ("dc", "dnc", "nd")
PHYSICAL_KEYS = ("corrected_ok", "miscorrected_silent", "detected_uncorrectable",
                 "uncovered_hit")


def pct(value):
    """Format a percentage with one decimal, rounding half up."""
    return str(Decimal(repr(float(value))).quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def slug(name):
    return re.sub(r"[^0-9a-z]+", "_", name.lower()).strip("_")


def _tally_row(tally):
    row = {"dc": tally.dc, "dnc": tally.dnc, "nd": tally.nd, "total": tally.total}
    for key, value in tally.rates().items():
        row[key + "_rate"] = value
    return row


def campaign_document(results, means, catalog, layouts, physical=None):
    """Assemble the campaign JSON document.

    Input:
        results: CampaignResult per layout, in report order.
        means: the MeanRates of results.
        catalog: the PatternCatalog used.
        layouts: the LineLayout objects matching results.
        physical: optional PhysicalResult per layout.
    """
    first = results[0]
    doc = {
        "kind": "campaign",
        "settings": {
            "rows": first.rows,
            "cols": first.cols,
            "counting": first.counting.value,
            "policy": first.policy.value,
            "catalog_digest": first.catalog_digest,
            "patterns": sorted(first.per_pattern),
        },
        "layouts": [],
        "means": {
            "layouts": list(means.layouts),
            "groups": [dict(group=g, **{k + "_rate": v for k, v in rates.items()})
                       for g, rates in means.per_group.items()],
            "patterns": [dict(pattern=i, group=catalog.group_of(i),
                              **{k + "_rate": v for k, v in rates.items()})
                         for i, rates in means.per_pattern.items()],
        },
    }

    for aResult, aLayout in zip(results, layouts):
        profile = redundancy_rate(aLayout)
        doc["layouts"].append({
            "name": aResult.layout,
            "uncovered": aLayout.uncovered_count,
            "redundancy_bits": profile.r_total,
            "coded_bits": profile.n_total,
            "patterns": [dict(pattern=i, group=catalog.group_of(i),
                              placements=aResult.placements[i], **_tally_row(t))
                         for i, t in aResult.per_pattern.items()],
            "groups": [dict(group=g, **_tally_row(t)) for g, t in aResult.per_group.items()],
        })

    if physical:
        doc["physical"] = []
        for aResult in physical:
            doc["physical"].append({
                "name": aResult.layout,
                "mode": "extended" if aResult.extended else "plain",
                "seed": aResult.seed,
                "patterns": [dict(pattern=i, total=t.total,
                                  **{k: getattr(t, k) for k in PHYSICAL_KEYS})
                             for i, t in aResult.per_pattern.items()],
            })

    return doc


def campaign_results_from_document(doc):
    """Rebuild the CampaignResult objects of a campaign document."""
    if doc.get("kind") != "campaign":
        raise ValueError("Expected a campaign document, got '%s'" % doc.get("kind"))
    settings = doc["settings"]
    results = []
    for aLayout in doc["layouts"]:
        groups = {}
        for row in aLayout["patterns"]:
            groups.setdefault(row["group"], []).append(row["pattern"])
        results.append(CampaignResult(
            layout=aLayout["name"],
            rows=settings["rows"],
            cols=settings["cols"],
            counting=Counting(settings["counting"]),
            policy=Policy(settings["policy"]),
            catalog_digest=settings["catalog_digest"],
            groups={g: tuple(ids) for g, ids in groups.items()},
            per_pattern={row["pattern"]: Tally(row["dc"], row["dnc"], row["nd"])
                         for row in aLayout["patterns"]},
            placements={row["pattern"]: row["placements"] for row in aLayout["patterns"]},
        ))
    return results


def reliability_document(tGrid, curves, fcTables, layouts, settings):
    """Assemble the reliability JSON document.

    Input:
        tGrid: the time values.
        curves: layout name -> R(t) values on tGrid, in report order.
        fcTables: layout name -> P{FC|iF} values.
        layouts: the LineLayout objects, for the redundancy table.
        settings: lambda, calibration anchor and model parameters.
    """
    redundancy = []
    for aLayout in layouts:
        profile = redundancy_rate(aLayout)
        redundancy.append({"layout": aLayout.name, "r_total": profile.r_total,
                           "n_total": profile.n_total, "tr": profile.tr})
    return {
        "kind": "reliability",
        "settings": settings,
        "fc_tables": [{"layout": name, "p_fc": [float(v) for v in table]}
                      for name, table in fcTables.items()],
        "series": {
            "t": [float(t) for t in tGrid],
            "curves": [{"layout": name, "r": [float(v) for v in values]}
                       for name, values in curves.items()],
        },
        "redundancy": redundancy,
    }


def write_json(doc, outDir, fileName):
    os.makedirs(outDir, exist_ok=True)
    outPath = os.path.join(outDir, fileName)
    with open(outPath, mode="w") as outFile:
        outFile.write(json.dumps(doc, indent=2, sort_keys=True))
        outFile.write("\n")
    logger.info("Wrote %s" % outPath)
    return outPath


def load_document(inPath):
    with open(inPath, mode="r") as inFile:
        doc = json.loads(inFile.read())
    if not isinstance(doc, dict) or doc.get("kind") not in ("campaign", "reliability"):
        raise ValueError("%s is not a campaign or reliability document" % inPath)
    return doc


def _rate_table(rows, keyColumns, rawColumns):
    """Rows as a DataFrame with raw columns followed by rounded percentage columns."""
    table = pd.DataFrame(rows, columns=list(keyColumns) + list(rawColumns)
                         + [k + "_rate" for k in RATE_KEYS])
    for key in RATE_KEYS:
        table[key + "_pct"] = [pct(v) for v in table[key + "_rate"]]
    return table


def _write_table(table, outDir, fileName, written):
    outPath = os.path.join(outDir, fileName)
    table.to_csv(outPath, index=False)
    logger.info("Wrote %s" % outPath)
    written.append(outPath)


def render_csv(doc, outDir):
    """Write the CSV tables of a campaign or reliability document.

    Output:
        the list of written paths.
    """
    os.makedirs(outDir, exist_ok=True)
    written = []

    if doc["kind"] == "campaign":
        for aLayout in doc["layouts"]:
            name = slug(aLayout["name"])
            _write_table(_rate_table(aLayout["patterns"], ("pattern", "group", "placements"),
                                     ("dc", "dnc", "nd", "total")),
                         outDir, "%s_patterns.csv" % name, written)
            _write_table(_rate_table(aLayout["groups"], ("group",), ("dc", "dnc", "nd", "total")),
                         outDir, "%s_groups.csv" % name, written)
        _write_table(_rate_table(doc["means"]["groups"], ("group",), ()),
                     outDir, "means_groups.csv", written)
        _write_table(_rate_table(doc["means"]["patterns"], ("pattern", "group"), ()),
                     outDir, "means_patterns.csv", written)
        for aLayout in doc.get("physical", []):
            table = pd.DataFrame(aLayout["patterns"],
                                 columns=["pattern"] + list(PHYSICAL_KEYS) + ["total"])
            _write_table(table, outDir, "%s_physical_%s.csv" % (slug(aLayout["name"]),
                                                                aLayout["mode"]), written)
        return written

    series = pd.DataFrame({"t": doc["series"]["t"]})
    for curve in doc["series"]["curves"]:
        series[curve["layout"]] = curve["r"]
    _write_table(series, outDir, "reliability.csv", written)

    ne = max(len(row["p_fc"]) for row in doc["fc_tables"])
    fcColumns = ["layout"] + ["p_fc_%df" % i for i in range(1, ne + 1)]
    fcRows = [[row["layout"]] + list(row["p_fc"]) for row in doc["fc_tables"]]
    _write_table(pd.DataFrame(fcRows, columns=fcColumns), outDir, "fc_tables.csv", written)

    redundancy = pd.DataFrame(doc["redundancy"], columns=["layout", "r_total", "n_total", "tr"])
    redundancy["tr_pct"] = [pct(100.0 * v) for v in redundancy["tr"]]
    _write_table(redundancy, outDir, "redundancy.csv", written)

    return written
