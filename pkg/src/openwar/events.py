"""Play-by-play data model: event taxonomy, records, CSV parsing and validation.

The on-disk format is a flat UTF-8 CSV with one row per plate appearance.
Base-out states are encoded as an out count (0-3) plus a 3-bit base
occupancy mask (bit0 = first, bit1 = second, bit2 = third).  Runner and
batter destinations use the codes "1B", "2B", "3B", "H" (scored) and
"O" (out); empty string means the field is absent.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field

__all__ = [
    "EVENT_TYPES",
    "BALL_IN_PLAY",
    "PITCHER_ONLY",
    "DESTINATIONS",
    "FIELDING_POSITIONS",
    "BATTER_POSITIONS",
    "GameState",
    "PlateAppearance",
    "SeasonDataset",
    "ValidationReport",
    "SchemaError",
    "TaxonomyError",
    "ChainError",
    "RecordError",
    "parse_season",
    "serialize_season",
    "validate_dataset",
    "aggregate_team_totals",
]

# Closed event taxonomy (MLBAM GameDay event strings).
_NOT_IN_PLAY = frozenset({
    "Strikeout",
    "Walk",
    "Intent Walk",
    "Hit By Pitch",
    "Home Run",
    "Catcher Interference",
    "Batter Interference",
    "Strikeout - DP",
    "null",
})

EVENT_TYPES = (
    "Strikeout", "Groundout", "Single", "Flyout", "Walk", "Pop Out",
    "Double", "Lineout", "Home Run", "Forceout", "Grounded Into DP",
    "Field Error", "Hit By Pitch", "Sac Bunt", "Sac Fly", "Intent Walk",
    "Triple", "Double Play", "Runner Out", "Bunt Groundout",
    "Fielders Choice Out", "Bunt Pop Out", "Strikeout - DP",
    "Fielders Choice", "Fan interference", "Batter Interference",
    "Catcher Interference", "Sac Fly DP", "null", "Bunt Lineout",
    "Triple Play", "Sacrifice Bunt DP",
)

#: event -> True when the ball is fieldable by the defense
BALL_IN_PLAY = {e: e not in _NOT_IN_PLAY for e in EVENT_TYPES}

#: events whose entire defensive run value belongs to the pitcher
PITCHER_ONLY = frozenset(e for e, bip in BALL_IN_PLAY.items() if not bip)

DESTINATIONS = ("1B", "2B", "3B", "H", "O")
_DEST_BASE = {"1B": 1, "2B": 2, "3B": 3}

FIELDING_POSITIONS = ("P", "C", "1B", "2B", "3B", "SS", "LF", "CF", "RF")
BATTER_POSITIONS = FIELDING_POSITIONS + ("DH", "PH")
HANDS = ("L", "R", "S")

CSV_COLUMNS = (
    "game_id", "pa_index", "inning", "half", "batter_id", "pitcher_id",
    "start_outs", "start_bases", "end_outs", "end_bases",
    "runner1_id", "runner2_id", "runner3_id",
    "runner1_dest", "runner2_dest", "runner3_dest",
    "batter_dest", "runs_scored", "event_type", "ballpark_id",
    "batter_hand", "pitcher_hand", "batter_position",
    "f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8", "f9",
    "bip_x", "bip_y",
)
#: optional extra column: which position converted the out on a ball in play
OPTIONAL_COLUMNS = ("credited_fielder_position",)


class SchemaError(ValueError):
    """CSV header does not match the documented schema."""


class TaxonomyError(ValueError):
    """Record carries an event_type outside the closed taxonomy."""


class RecordError(ValueError):
    """A record violates a field-level invariant."""


class ChainError(ValueError):
    """Consecutive records within a half-inning disagree on game state."""


@dataclass(frozen=True)
class GameState:
    outs: int
    bases: int

    def __post_init__(self):
        if self.outs not in (0, 1, 2, 3):
            raise RecordError(f"outs must be 0-3, got {self.outs}")
        if not 0 <= self.bases <= 7:
            raise RecordError(f"bases mask must be 0-7, got {self.bases}")
        if self.outs == 3 and self.bases != 0:
            # absorbing state is normalized to an empty-bases mask
            object.__setattr__(self, "bases", 0)

    @property
    def live(self):
        return self.outs < 3

    def occupied(self, base):
        """True when `base` (1, 2 or 3) holds a runner."""
        return bool(self.bases >> (base - 1) & 1)


#: the 24 live base-out states, in (outs, bases) order
LIVE_STATES = tuple((o, b) for o in range(3) for b in range(8))


@dataclass
class PlateAppearance:
    game_id: str
    pa_index: int
    inning: int
    half: str  # "top" | "bottom"
    batter_id: str
    pitcher_id: str
    start_state: GameState
    end_state: GameState
    runner_ids: tuple  # (runner on 1B, 2B, 3B); None when base empty
    runner_dests: tuple  # destination code per start base, None when empty
    batter_dest: str
    runs_scored: int
    event_type: str
    ballpark_id: str
    batter_hand: str
    pitcher_hand: str
    batter_position: str
    fielder_ids: tuple  # 9 ids, positions P..RF in FIELDING_POSITIONS order
    bip_location: tuple = None  # (x, y) feet, home plate at origin
    credited_fielder_position: str = None

    @property
    def ball_in_play(self):
        return BALL_IN_PLAY[self.event_type]

    def runners(self):
        """Yield (start_base, runner_id, dest) for occupied start bases."""
        for base in (1, 2, 3):
            rid = self.runner_ids[base - 1]
            if rid is not None:
                yield base, rid, self.runner_dests[base - 1]

    @property
    def outs_on_play(self):
        n = 1 if self.batter_dest == "O" else 0
        return n + sum(1 for _, _, d in self.runners() if d == "O")


@dataclass
class SeasonDataset:
    plate_appearances: list
    roster: dict = field(default_factory=dict)  # player id -> display name
    parks: set = field(default_factory=set)

    def __len__(self):
        return len(self.plate_appearances)

    def half_innings(self):
        """Group plate appearances by (game_id, inning, half), in record order."""
        groups = []
        key = None
        for pa in self.plate_appearances:
            k = (pa.game_id, pa.inning, pa.half)
            if k != key:
                groups.append((k, []))
                key = k
            groups[-1][1].append(pa)
        return groups


@dataclass
class ValidationReport:
    errors: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    dropped: int = 0

    @property
    def ok(self):
        return not self.errors


def _check_record(pa):
    """Return a list of invariant-violation messages for one record."""
    problems = []
    where = f"game {pa.game_id} pa {pa.pa_index}"
    if pa.event_type not in BALL_IN_PLAY:
        raise TaxonomyError(f"{where}: unknown event_type {pa.event_type!r}")
    if pa.half not in ("top", "bottom"):
        problems.append(f"{where}: half must be top/bottom, got {pa.half!r}")
    if pa.batter_hand not in HANDS or pa.pitcher_hand not in HANDS:
        problems.append(f"{where}: bad handedness")
    if pa.batter_position not in BATTER_POSITIONS:
        problems.append(f"{where}: bad batter_position {pa.batter_position!r}")
    if len(pa.fielder_ids) != 9 or any(not f for f in pa.fielder_ids):
        problems.append(f"{where}: fielder_ids must list 9 players")

    # runner columns must agree with the start-state occupancy mask
    for base in (1, 2, 3):
        rid = pa.runner_ids[base - 1]
        dest = pa.runner_dests[base - 1]
        if pa.start_state.occupied(base):
            if rid is None or dest is None:
                problems.append(f"{where}: base {base} occupied but runner id/dest missing")
            elif dest not in DESTINATIONS:
                problems.append(f"{where}: bad destination {dest!r}")
        elif rid is not None or dest is not None:
            problems.append(f"{where}: base {base} empty but runner fields present")

    if pa.event_type != "null":
        if pa.batter_dest not in DESTINATIONS:
            problems.append(f"{where}: bad batter_dest {pa.batter_dest!r}")

    scored = sum(1 for _, _, d in pa.runners() if d == "H")
    if pa.batter_dest == "H":
        scored += 1
    if pa.runs_scored != scored:
        problems.append(
            f"{where}: runs_scored={pa.runs_scored} but {scored} scored destinations")

    outs_made = pa.end_state.outs - pa.start_state.outs
    if outs_made < 0:
        problems.append(f"{where}: outs decrease within a plate appearance")
    elif pa.outs_on_play != outs_made:
        problems.append(
            f"{where}: {pa.outs_on_play} out destinations but outs advanced by {outs_made}")

    if pa.ball_in_play and pa.bip_location is None:
        problems.append(f"{where}: in-play event {pa.event_type!r} missing bip location")
    if not pa.ball_in_play and pa.bip_location is not None:
        problems.append(f"{where}: event {pa.event_type!r} cannot carry a bip location")
    if pa.credited_fielder_position is not None and \
            pa.credited_fielder_position not in FIELDING_POSITIONS:
        problems.append(f"{where}: bad credited_fielder_position")
    return problems


def validate_dataset(dataset, strict=True):
    """Check every record plus the within-half-inning state chain.

    Chain discontinuities (e.g. steals between plate appearances) are
    warnings in lenient mode and ChainErrors in strict mode.
    """
    report = ValidationReport()
    for pa in dataset.plate_appearances:
        report.errors.extend(_check_record(pa))
    for (game_id, inning, half), group in dataset.half_innings():
        first = group[0]
        if first.start_state.outs != 0 or first.start_state.bases != 0:
            msg = (f"game {game_id} {half} {inning}: half-inning does not "
                   f"start at (0 outs, bases empty)")
            (report.errors if strict else report.warnings).append(msg)
        for prev, nxt in zip(group, group[1:]):
            if prev.end_state != nxt.start_state:
                msg = (f"game {game_id} pa {nxt.pa_index}: state chain break "
                       f"({prev.end_state.outs},{prev.end_state.bases}) -> "
                       f"({nxt.start_state.outs},{nxt.start_state.bases})")
                (report.errors if strict else report.warnings).append(msg)
    if strict and report.errors:
        raise ChainError("; ".join(report.errors[:5]))
    return report


def _parse_float(s):
    return float(s) if s != "" else None


def _row_to_pa(row):
    start = GameState(int(row["start_outs"]), int(row["start_bases"]))
    end = GameState(int(row["end_outs"]), int(row["end_bases"]))
    bx, by = _parse_float(row["bip_x"]), _parse_float(row["bip_y"])
    if (bx is None) != (by is None):
        raise RecordError(
            f"game {row['game_id']} pa {row['pa_index']}: bip_x/bip_y must both be set")
    cfp = row.get("credited_fielder_position", "") or None
    return PlateAppearance(
        game_id=row["game_id"],
        pa_index=int(row["pa_index"]),
        inning=int(row["inning"]),
        half=row["half"],
        batter_id=row["batter_id"],
        pitcher_id=row["pitcher_id"],
        start_state=start,
        end_state=end,
        runner_ids=tuple(row[f"runner{b}_id"] or None for b in (1, 2, 3)),
        runner_dests=tuple(row[f"runner{b}_dest"] or None for b in (1, 2, 3)),
        batter_dest=row["batter_dest"],
        runs_scored=int(row["runs_scored"]),
        event_type=row["event_type"],
        ballpark_id=row["ballpark_id"],
        batter_hand=row["batter_hand"],
        pitcher_hand=row["pitcher_hand"],
        batter_position=row["batter_position"],
        fielder_ids=tuple(row[f"f{i}"] for i in range(1, 10)),
        bip_location=(bx, by) if bx is not None else None,
        credited_fielder_position=cfp,
    )


def parse_season(source, strictness="strict"):
    """Parse a season CSV into a SeasonDataset.

    `source` may be a str, bytes, or a text file object.  Lines starting
    with '#' are ignored (the CLI writes a provenance comment).  In strict
    mode any invariant violation raises; in lenient mode violating records
    are dropped and counted, and chain breaks become warnings.

    Returns (dataset, report).
    """
    if strictness not in ("strict", "lenient"):
        raise ValueError(f"strictness must be strict|lenient, got {strictness!r}")
    strict = strictness == "strict"
    if isinstance(source, bytes):
        source = source.decode("utf-8")
    if isinstance(source, str):
        source = io.StringIO(source)

    lines = (ln for ln in source if not ln.startswith("#"))
    reader = csv.DictReader(lines)
    if reader.fieldnames is None:
        raise SchemaError("empty input: no header row")
    have = set(reader.fieldnames)
    missing = set(CSV_COLUMNS) - have
    unknown = have - set(CSV_COLUMNS) - set(OPTIONAL_COLUMNS)
    if missing or unknown:
        raise SchemaError(
            f"bad header: missing {sorted(missing)}, unknown {sorted(unknown)}")

    report = ValidationReport()
    pas = []
    for row in reader:
        try:
            pa = _row_to_pa(row)
        except TaxonomyError:
            raise
        except (RecordError, ValueError, KeyError) as exc:
            if strict:
                raise RecordError(str(exc)) from exc
            report.dropped += 1
            report.warnings.append(f"dropped malformed row: {exc}")
            continue
        if pa.event_type not in BALL_IN_PLAY:
            raise TaxonomyError(
                f"game {pa.game_id} pa {pa.pa_index}: unknown event_type "
                f"{pa.event_type!r}")
        problems = _check_record(pa)
        if problems:
            if strict:
                raise RecordError("; ".join(problems))
            report.dropped += 1
            report.warnings.extend(problems)
            continue
        pas.append(pa)

    dataset = SeasonDataset(plate_appearances=pas)
    for pa in pas:
        dataset.parks.add(pa.ballpark_id)
        for pid in (pa.batter_id, pa.pitcher_id, *pa.fielder_ids):
            dataset.roster.setdefault(pid, pid)
        for _, rid, _ in pa.runners():
            dataset.roster.setdefault(rid, rid)

    chain = validate_dataset(dataset, strict=strict)
    report.warnings.extend(chain.warnings)
    return dataset, report


def _fmt(value):
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)  # shortest round-trip representation
    return str(value)


def serialize_season(dataset, include_credited=True):
    """Serialize a SeasonDataset to its canonical CSV string."""
    out = io.StringIO()
    cols = CSV_COLUMNS + (OPTIONAL_COLUMNS if include_credited else ())
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(cols)
    for pa in dataset.plate_appearances:
        bx, by = pa.bip_location if pa.bip_location else (None, None)
        row = [
            pa.game_id, pa.pa_index, pa.inning, pa.half,
            pa.batter_id, pa.pitcher_id,
            pa.start_state.outs, pa.start_state.bases,
            pa.end_state.outs, pa.end_state.bases,
            *(pa.runner_ids[b] for b in range(3)),
            *(pa.runner_dests[b] for b in range(3)),
            pa.batter_dest, pa.runs_scored, pa.event_type, pa.ballpark_id,
            pa.batter_hand, pa.pitcher_hand, pa.batter_position,
            *pa.fielder_ids, bx, by,
        ]
        if include_credited:
            row.append(pa.credited_fielder_position)
        writer.writerow([_fmt(v) for v in row])
    return out.getvalue()


# Team aggregation.  The schema carries no team column; game ids of the
# form "<away>@<home>..." identify the two clubs, and the batting team of
# a record is the away club in the top half, the home club in the bottom.
def _teams_from_game_id(game_id):
    if "@" in game_id:
        away, rest = game_id.split("@", 1)
        home = rest.split("_")[0].split("-")[0]
        if away and home:
            return away, home
    return None


_NOT_AN_AB = frozenset({
    "Walk", "Intent Walk", "Hit By Pitch", "Sac Bunt", "Sac Fly",
    "Sac Fly DP", "Sacrifice Bunt DP", "Catcher Interference", "null",
})
_HITS = frozenset({"Single", "Double", "Triple", "Home Run"})


def aggregate_team_totals(dataset):
    """Per-team counting statistics (G, PA, AB, R, H, HR, BB, K).

    Returns a dict team -> dict of counts, teams sorted by key.  Records
    whose game_id does not encode teams are keyed by "<game_id>/<half>".
    """
    totals = {}
    games = {}
    for pa in dataset.plate_appearances:
        teams = _teams_from_game_id(pa.game_id)
        if teams is None:
            team = f"{pa.game_id}/{pa.half}"
        else:
            team = teams[0] if pa.half == "top" else teams[1]
        t = totals.setdefault(
            team, {"G": 0, "PA": 0, "AB": 0, "R": 0, "H": 0, "HR": 0, "BB": 0, "K": 0})
        games.setdefault(team, set()).add(pa.game_id)
        t["PA"] += 1
        if pa.event_type not in _NOT_AN_AB:
            t["AB"] += 1
        t["R"] += pa.runs_scored
        if pa.event_type in _HITS:
            t["H"] += 1
        if pa.event_type == "Home Run":
            t["HR"] += 1
        if pa.event_type in ("Walk", "Intent Walk"):
            t["BB"] += 1
        if pa.event_type in ("Strikeout", "Strikeout - DP"):
            t["K"] += 1
    for team, g in games.items():
        totals[team]["G"] = len(g)
    return dict(sorted(totals.items()))
