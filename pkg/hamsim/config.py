# -*- coding: utf-8 -*-
"""Hamming Memory Simulator Config Class

 Layered config for the Hamming Memory Simulator. Settings are looked up in the
 command line flags first, then the user's config file, then main_config.json.
"""

import os
import sys
import json
import logging

from dataclasses import dataclass
from os import path
from typing import Optional, Tuple, Union

from .campaign import Counting, Policy
from .helper.arrays import parse_grid

logger = logging.getLogger(__name__)

FORMATS = ("csv", "json", "both")
PHYSICAL_MODES = ("plain", "extended")


class Config():

    def __init__(self, userConf=None):

        self._packRoot = None
        self._confData = {}

        self._loadConfig(userConf)

        return

    ##
    #  Get Functions
    ##

    def getSetting(self, group, key, default=None):
        """Returns a setting by pathname, looking up in priority order.
        """
        if not isinstance(group, str):
            raise ValueError("'group'' must be a string")
        if not isinstance(key, str):
            raise ValueError("'key'' must be a string")

        for aRoot in ["FLAGS", "USER", "MAIN"]:
            if aRoot in self._confData:
                if group in self._confData[aRoot]["config"]:
                    if key in self._confData[aRoot]["config"][group]:
                        value = self._confData[aRoot]["config"][group][key]
                        if value is not None:
                            return value

        logger.debug("No config entry found matching %s/%s" % (group, key))

        return default

    def sourceOf(self, group, key):
        """Returns the path of the file a setting came from, or 'command line'.
        """
        level = self.levelOf(group, key)
        if level is None:
            return "defaults"
        return self._confData[["FLAGS", "USER", "MAIN"][level]]["path"]

    def levelOf(self, group, key):
        """Returns the priority level holding a setting, 0 being the highest.
        """
        for level, aRoot in enumerate(["FLAGS", "USER", "MAIN"]):
            conf = self._confData[aRoot]["config"]
            if conf.get(group, {}).get(key) is not None:
                return level
        return None

    ##
    #  Set Functions
    ##

    def setSetting(self, group, key, value):
        """Sets a command line value, overriding the config files.
        """
        if value is None:
            return
        self._confData["FLAGS"]["config"].setdefault(group, {})[key] = value
        return

    ##
    #  Internal Functions
    ##

    def _loadConfig(self, userConf):
        """Load the config files, if they exist, and extract the data.
        """
        self._packRoot = getattr(sys, "_MEIPASS", path.abspath(path.dirname(__file__)))
        rootDir = path.abspath(path.join(self._packRoot, path.pardir))
        logger.debug("HamSim root dir is: %s" % rootDir)

        mainConf = path.join(rootDir, "main_config.json")
        if userConf is None:
            userConf = path.join(rootDir, "user_config.json")
        elif not path.isfile(userConf):
            raise ValueError("Config file not found: %s" % userConf)

        self._confData = {
            "MAIN":  {"path": mainConf, "config": {}, "loaded": False},
            "USER":  {"path": userConf, "config": {}, "loaded": False},
            "FLAGS": {"path": "command line", "config": {}, "loaded": True},
        }

        for confGroup in ["MAIN", "USER"]:
            confFile = self._confData[confGroup]["path"]
            logger.debug("Loading %s config file" % confGroup)
            if path.isfile(confFile):
                try:
                    with open(confFile, mode="r") as inFile:
                        jsonData = json.loads(inFile.read())
                except Exception as e:
                    logger.error("Failed to parse config JSON data.")
                    logger.error(str(e))
                    raise ValueError("Invalid config file %s: %s" % (confFile, str(e)))
                if not isinstance(jsonData, dict) or not isinstance(jsonData.get("config"), dict):
                    raise ValueError("Config file %s has no 'config' object" % confFile)
                self._confData[confGroup]["config"] = jsonData["config"]
                self._confData[confGroup]["loaded"] = True
            else:
                logger.debug("No file: %s" % confFile)

        return

# END Class Config


@dataclass(frozen=True)
class RunConfig:
    rows: int = 8
    cols: int = 32
    layouts: Tuple[str, ...] = ()
    catalog: Optional[str] = None
    patterns: Optional[Tuple[int, ...]] = None
    counting: Counting = Counting.FLIPS
    policy: Policy = Policy.DNC3
    physical: Optional[str] = None
    seed: int = 0
    lam: Optional[float] = None
    calibrate: Optional[Tuple[str, float, float]] = None
    t_grid: Union[str, Tuple[float, ...]] = "0:3500:50"
    words: int = 50
    n_word: int = 32
    ne: int = 4
    out: str = "results"
    format: str = "both"
    jobs: int = 1
    results: Optional[str] = None

    def validate(self, reliability=False):
        """Raise ValueError naming the first invalid field.
        """
        if not self.layouts:
            raise ValueError("campaign/layouts: no layout selected")
        if self.catalog is not None and not path.isfile(self.catalog):
            raise ValueError("campaign/catalog: file not found: %s" % self.catalog)
        if self.format not in FORMATS:
            raise ValueError("output/format: must be one of %s, got '%s'"
                             % (", ".join(FORMATS), self.format))
        if self.physical is not None and self.physical not in PHYSICAL_MODES:
            raise ValueError("campaign/physical: must be one of %s, got '%s'"
                             % (", ".join(PHYSICAL_MODES), self.physical))
        if self.jobs < 1:
            raise ValueError("campaign/jobs: must be >= 1, got %d" % self.jobs)
        if self.results is not None and not path.isfile(self.results):
            raise ValueError("reliability/results: file not found: %s" % self.results)

        if reliability:
            if (self.lam is None) == (self.calibrate is None):
                raise ValueError("reliability: give exactly one of 'lambda' and 'calibrate'")
            if self.lam is not None and not self.lam > 0:
                raise ValueError("reliability/lambda: must be > 0, got %r" % self.lam)
            if not 1 <= self.ne <= 4:
                raise ValueError("reliability/ne: must be within 1..4, got %d" % self.ne)
            if self.words < 1:
                raise ValueError("reliability/words: must be >= 1, got %d" % self.words)
            try:
                parse_grid(self.t_grid)
            except ValueError as e:
                raise ValueError("reliability/t_grid: %s" % str(e))

        return self

    @property
    def tGrid(self):
        return parse_grid(self.t_grid)


def parse_calibration(text):
    """Split "<layout>:<t>:<R>" into (layout, t, R)."""
    parts = text.rsplit(":", 2)
    if len(parts) != 3 or not parts[0]:
        raise ValueError("Calibration anchor '%s' must read <layout>:<t>:<R>" % text)
    try:
        return parts[0], float(parts[1]), float(parts[2])
    except ValueError:
        raise ValueError("Calibration anchor '%s' has a non numeric t or R" % text)


def default_jobs():
    value = os.environ.get("HAMSIM_JOBS")
    if value:
        try:
            return max(1, int(value))
        except ValueError:
            logger.warning("Ignoring invalid HAMSIM_JOBS value '%s'" % value)
    return os.cpu_count() or 1


def make_run_config(conf):
    """Build the typed run config from the layered settings.

    Can raise:
        ValueError naming the setting that cannot be converted.
    """
    def get(group, key, convert, default=None):
        value = conf.getSetting(group, key)
        if value is None:
            return default
        try:
            return convert(value)
        except (TypeError, ValueError) as e:
            raise ValueError("%s/%s in %s: %s" % (group, key, conf.sourceOf(group, key), str(e)))

    def as_tuple(convert):
        def inner(value):
            if isinstance(value, (str, int)):
                value = [value]
            return tuple(convert(v) for v in value)
        return inner

    calibrate = conf.getSetting("reliability", "calibrate")
    if isinstance(calibrate, str):
        calibrate = get("reliability", "calibrate", parse_calibration)
    elif calibrate is not None:
        calibrate = get("reliability", "calibrate", lambda v: (str(v[0]), float(v[1]),
                                                               float(v[2])))

    lam = get("reliability", "lambda", float)
    if lam is not None and calibrate is not None:
        # lambda and calibrate exclude each other; a higher layer replaces both
        lamLevel = conf.levelOf("reliability", "lambda")
        calLevel = conf.levelOf("reliability", "calibrate")
        if lamLevel < calLevel:
            calibrate = None
        elif calLevel < lamLevel:
            lam = None

    tGrid = conf.getSetting("reliability", "t_grid", "0:3500:50")
    if not isinstance(tGrid, str):
        # an explicit list of times
        tGrid = get("reliability", "t_grid", as_tuple(float))

    jobs = get("campaign", "jobs", int)
    if jobs is None:
        jobs = default_jobs()

    return RunConfig(
        rows=get("geometry", "rows", int, 8),
        cols=get("geometry", "cols", int, 32),
        layouts=get("campaign", "layouts", as_tuple(str), ()),
        catalog=get("campaign", "catalog", str),
        patterns=get("campaign", "patterns", as_tuple(int)),
        counting=get("campaign", "counting", Counting, Counting.FLIPS),
        policy=get("campaign", "policy", Policy, Policy.DNC3),
        physical=get("campaign", "physical", str),
        seed=get("campaign", "seed", int, 0),
        lam=lam,
        calibrate=calibrate,
        t_grid=tGrid,
        words=get("reliability", "words", int, 50),
        n_word=get("reliability", "n_word", int, 32),
        ne=get("reliability", "ne", int, 4),
        out=get("output", "out", str, "results"),
        format=get("output", "format", str, "both"),
        jobs=jobs,
        results=get("reliability", "results", str),
    )
