# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Command Line

 Commands:
    simulate     run the fault-injection campaigns and write the rate tables
    reliability  compute R(t) series and the redundancy table
    report       re-render a saved JSON document to CSV
"""

import os
import logging
import argparse

from .campaign import aggregate_means, result_for, run_campaign, run_physical
from .config import Config, make_run_config, parse_calibration
from .faults import load_catalog
from .layout import MemoryGeometry, get_layout
from .reliability import (
    ReliabilityInput, calibrate_lambda, fc_table_from_campaign, reliability,
    reliability_series
)
from .report import (
    campaign_document, campaign_results_from_document, load_document, reliability_document,
    render_csv, write_json
)

logger = logging.getLogger(__name__)


def _prepare(runConf):
    geom = MemoryGeometry(rows=runConf.rows, cols=runConf.cols)
    layouts = [get_layout(ref, cols=geom.cols) for ref in runConf.layouts]
    names = [x.name for x in layouts]
    if len(set(names)) != len(names):
        raise ValueError("campaign/layouts: layout selected twice in %s" % ", ".join(names))
    catalog = load_catalog(runConf.catalog)
    return geom, layouts, catalog


def _campaigns(runConf, geom, layouts, catalog):
    results = []
    for aLayout in layouts:
        logger.info("Running campaign for %s" % aLayout.name)
        results.append(run_campaign(aLayout, catalog, geom, policy=runConf.policy,
                                    counting=runConf.counting, patterns=runConf.patterns,
                                    jobs=runConf.jobs))
    return results


def _emit(doc, runConf, jsonName):
    written = []
    if runConf.format in ("json", "both"):
        written.append(write_json(doc, runConf.out, jsonName))
    if runConf.format in ("csv", "both"):
        written.extend(render_csv(doc, runConf.out))
    return written


def cmd_simulate(runConf):
    """Run the campaign of every selected layout and write the rate tables.

    Output:
        the list of written files.
    """
    runConf.validate()
    geom, layouts, catalog = _prepare(runConf)
    results = _campaigns(runConf, geom, layouts, catalog)
    means = aggregate_means(results)

    physical = None
    if runConf.physical is not None:
        physical = []
        for aLayout in layouts:
            logger.info("Running %s decoder sweep for %s" % (runConf.physical, aLayout.name))
            physical.append(run_physical(aLayout, catalog, geom,
                                         extended=runConf.physical == "extended",
                                         seed=runConf.seed, patterns=runConf.patterns,
                                         jobs=runConf.jobs))

    doc = campaign_document(results, means, catalog, layouts, physical=physical)
    return _emit(doc, runConf, "campaign.json")


def cmd_reliability(runConf):
    """Compute the reliability series of every selected layout.

    The correction probabilities come from a saved campaign document when one is
    given, otherwise the campaigns are run first. With a calibration anchor the bit
    fault rate is solved so that the anchor layout reaches R at time t.

    Output:
        the list of written files.
    """
    runConf.validate(reliability=True)

    if runConf.results is not None:
        geom = MemoryGeometry(rows=runConf.rows, cols=runConf.cols)
        layouts = [get_layout(ref, cols=geom.cols) for ref in runConf.layouts]
        saved = campaign_results_from_document(load_document(runConf.results))
        results = []
        for aLayout in layouts:
            aResult = result_for(saved, aLayout.name)
            if aResult is None:
                raise ValueError("%s holds no campaign for layout '%s'"
                                 % (runConf.results, aLayout.name))
            results.append(aResult)
    else:
        geom, layouts, catalog = _prepare(runConf)
        results = _campaigns(runConf, geom, layouts, catalog)

    fcTables = {}
    for aResult in results:
        fcTables[aResult.layout] = fc_table_from_campaign(aResult)[:runConf.ne]

    calibration = None
    if runConf.calibrate is not None:
        name, tAnchor, target = runConf.calibrate
        anchorName = next((n for n in fcTables if n.lower() == name.lower()), None)
        if anchorName is None:
            raise ValueError("reliability/calibrate: layout '%s' is not selected" % name)
        lam = calibrate_lambda(fcTables[anchorName], tAnchor, target,
                               n_word=runConf.n_word, words=runConf.words)
        calibration = {"layout": anchorName, "t": tAnchor, "target": target, "reliability": []}
        logger.info("Calibrated lambda = %.6g from R(%g) = %g for %s"
                    % (lam, tAnchor, target, anchorName))
    else:
        lam = runConf.lam

    tGrid = runConf.tGrid
    curves = {}
    for name, table in fcTables.items():
        rel = ReliabilityInput(lam=lam, fc_table=table, n_word=runConf.n_word,
                               words=runConf.words)
        curves[name] = reliability_series(rel, tGrid)
        if calibration is not None:
            rAnchor = reliability(rel, calibration["t"])
            # a list keeps the layout order under sorted keys
            calibration["reliability"].append({"layout": name, "r": rAnchor})
            logger.info("%-14s R(%g) = %.4f" % (name, calibration["t"], rAnchor))

    settings = {
        "lambda": lam,
        "calibration": calibration,
        "n_word": runConf.n_word,
        "words": runConf.words,
        "ne": runConf.ne,
    }
    doc = reliability_document(tGrid, curves, fcTables, layouts, settings)
    return _emit(doc, runConf, "reliability.json")


def cmd_report(docPath, outDir):
    """Re-render a saved campaign or reliability document to CSV."""
    return render_csv(load_document(docPath), outDir)


def build_parser():
    parser = argparse.ArgumentParser(
        prog="hamsim",
        description="Fault-injection campaigns and reliability of Hamming-coded memories.")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="JSON config file")
    common.add_argument("--layout", action="append", metavar="NAME|PATH",
                        help="built-in layout name or layout file (repeatable)")
    common.add_argument("--catalog", metavar="PATH", help="pattern catalog file")
    common.add_argument("--pattern", action="append", type=int, metavar="ID",
                        help="restrict the sweep to a pattern id (repeatable)")
    common.add_argument("--rows", type=int, help="memory lines")
    common.add_argument("--cols", type=int, help="bits per memory line")
    common.add_argument("--counting", choices=["flips", "placements"])
    common.add_argument("--policy", choices=["dnc3", "nd3"],
                        help="class of flips in blocks holding three or more flips")
    common.add_argument("--out", metavar="DIR", help="output directory")
    common.add_argument("--format", choices=["csv", "json", "both"])
    common.add_argument("--jobs", type=int, metavar="N",
                        help="worker processes (default: $HAMSIM_JOBS or CPU count)")
    common.add_argument("--seed", type=int, metavar="U64", help="seed of the decoder sweep data")

    simulate = sub.add_parser("simulate", parents=[common], help="run the campaigns")
    simulate.add_argument("--physical", choices=["plain", "extended"],
                          help="also decode real codewords in this mode")

    rel = sub.add_parser("reliability", parents=[common], help="reliability series")
    group = rel.add_mutually_exclusive_group()
    group.add_argument("--lambda", dest="lam", type=float, metavar="FLOAT",
                       help="bit fault rate per unit time")
    group.add_argument("--calibrate", metavar="LAYOUT:T:R",
                       help="solve lambda so that LAYOUT has reliability R at time T")
    rel.add_argument("--t-grid", metavar="START:STOP:STEP")
    rel.add_argument("--words", type=int, metavar="M", help="words in the memory")
    rel.add_argument("--results", metavar="JSON", help="reuse a saved campaign document")

    report = sub.add_parser("report", help="re-render a saved JSON document to CSV")
    report.add_argument("document", metavar="JSON")
    report.add_argument("--out", metavar="DIR", default=None)

    return parser


def config_from_args(args):
    """Layer the command line flags over the config files."""
    conf = Config(args.config)
    conf.setSetting("geometry", "rows", args.rows)
    conf.setSetting("geometry", "cols", args.cols)
    conf.setSetting("campaign", "layouts", args.layout)
    conf.setSetting("campaign", "catalog", args.catalog)
    conf.setSetting("campaign", "patterns", args.pattern)
    conf.setSetting("campaign", "counting", args.counting)
    conf.setSetting("campaign", "policy", args.policy)
    conf.setSetting("campaign", "seed", args.seed)
    conf.setSetting("campaign", "jobs", args.jobs)
    conf.setSetting("campaign", "physical", getattr(args, "physical", None))
    conf.setSetting("output", "out", args.out)
    conf.setSetting("output", "format", args.format)
    conf.setSetting("reliability", "lambda", getattr(args, "lam", None))
    if getattr(args, "calibrate", None) is not None:
        conf.setSetting("reliability", "calibrate", list(parse_calibration(args.calibrate)))
    conf.setSetting("reliability", "t_grid", getattr(args, "t_grid", None))
    conf.setSetting("reliability", "words", getattr(args, "words", None))
    conf.setSetting("reliability", "results", getattr(args, "results", None))
    return make_run_config(conf)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)

    try:
        if args.command == "report":
            outDir = args.out or os.path.dirname(os.path.abspath(args.document))
            cmd_report(args.document, outDir)
        elif args.command == "simulate":
            cmd_simulate(config_from_args(args))
        else:
            cmd_reliability(config_from_args(args))
    except (ValueError, RuntimeError, OSError) as e:
        logger.error(str(e))
        return 1

    return 0
