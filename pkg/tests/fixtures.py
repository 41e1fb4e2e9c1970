"""Hand-built play-by-play fixtures shared across test modules."""

from openwar.events import BALL_IN_PLAY, GameState, PlateAppearance, SeasonDataset

FIELDERS = tuple(f"D{i}" for i in range(1, 10))


def make_pa(game_id, pa_index, inning, half, outs, bases, event, batter_dest,
            runner_dests=None, batter_id="B1", pitcher_id="P1", park="PK",
            batter_hand="R", pitcher_hand="R", position="CF", bip=None,
            credited=None):
    """Build a valid PlateAppearance; the end state follows from the
    destination codes."""
    runner_dests = runner_dests or {}
    runner_ids = tuple(
        f"R{b}" if bases >> (b - 1) & 1 else None for b in (1, 2, 3))
    dests = tuple(
        runner_dests.get(b) if runner_ids[b - 1] is not None else None
        for b in (1, 2, 3))
    end_bases = 0
    for d in dests + (batter_dest,):
        if d in ("1B", "2B", "3B"):
            end_bases |= 1 << (int(d[0]) - 1)
    outs_made = (batter_dest == "O") + sum(1 for d in dests if d == "O")
    runs = (batter_dest == "H") + sum(1 for d in dests if d == "H")
    if bip is None and BALL_IN_PLAY[event]:
        bip = (30.0, 150.0)
    return PlateAppearance(
        game_id=game_id, pa_index=pa_index, inning=inning, half=half,
        batter_id=batter_id, pitcher_id=pitcher_id,
        start_state=GameState(outs, bases),
        end_state=GameState(outs + outs_made, end_bases),
        runner_ids=runner_ids, runner_dests=dests,
        batter_dest=batter_dest, runs_scored=runs, event_type=event,
        ballpark_id=park, batter_hand=batter_hand, pitcher_hand=pitcher_hand,
        batter_position=position, fielder_ids=FIELDERS,
        bip_location=bip, credited_fielder_position=credited,
    )


def build_re_fixture():
    """Three half-innings covering all 24 base-out states exactly.

    Returns (dataset, expected_rho, expected_counts), with the expected
    values computed by hand from the runs-to-inning-end of each record.
    """
    g = "AWY@HOM-0001"
    rows = []

    def add(inning, half, outs, bases, event, bdest, rdests=None):
        rows.append(make_pa(g, len(rows), inning, half, outs, bases,
                            event, bdest, rdests))

    # top 1: all eight base masks at 0 outs, then three quick outs;
    # 6 runs score (grand slam sequence + a two-run triple)
    add(1, "top", 0, 0, "Double", "2B")
    add(1, "top", 0, 2, "Single", "1B", {2: "3B"})
    add(1, "top", 0, 5, "Walk", "1B", {1: "2B", 3: "3B"})
    add(1, "top", 0, 7, "Home Run", "H", {1: "H", 2: "H", 3: "H"})
    add(1, "top", 0, 0, "Single", "1B")
    add(1, "top", 0, 1, "Single", "1B", {1: "2B"})
    add(1, "top", 0, 3, "Triple", "3B", {1: "H", 2: "H"})
    add(1, "top", 0, 4, "Double", "2B", {3: "3B"})
    add(1, "top", 0, 6, "Strikeout", "O", {2: "2B", 3: "3B"})
    add(1, "top", 1, 6, "Flyout", "O", {2: "2B", 3: "3B"})
    add(1, "top", 2, 6, "Groundout", "O", {2: "2B", 3: "3B"})

    # bottom 1: all eight masks at 1 out; 5 runs
    add(1, "bottom", 0, 0, "Strikeout", "O")
    add(1, "bottom", 1, 0, "Double", "2B")
    add(1, "bottom", 1, 2, "Single", "1B", {2: "3B"})
    add(1, "bottom", 1, 5, "Walk", "1B", {1: "2B", 3: "3B"})
    add(1, "bottom", 1, 7, "Triple", "3B", {1: "H", 2: "H", 3: "H"})
    add(1, "bottom", 1, 4, "Double", "2B", {3: "3B"})
    add(1, "bottom", 1, 6, "Single", "1B", {2: "H", 3: "H"})
    add(1, "bottom", 1, 1, "Single", "1B", {1: "2B"})
    add(1, "bottom", 1, 3, "Grounded Into DP", "O", {1: "O", 2: "3B"})

    # top 2: all eight masks at 2 outs; 5 runs
    add(2, "top", 0, 0, "Flyout", "O")
    add(2, "top", 1, 0, "Pop Out", "O")
    add(2, "top", 2, 0, "Single", "1B")
    add(2, "top", 2, 1, "Single", "1B", {1: "3B"})
    add(2, "top", 2, 5, "Walk", "1B", {1: "2B", 3: "3B"})
    add(2, "top", 2, 7, "Triple", "3B", {1: "H", 2: "H", 3: "H"})
    add(2, "top", 2, 4, "Double", "2B", {3: "H"})
    add(2, "top", 2, 2, "Walk", "1B", {2: "2B"})
    add(2, "top", 2, 3, "Double", "2B", {1: "3B", 2: "H"})
    add(2, "top", 2, 6, "Groundout", "O", {2: "2B", 3: "3B"})

    data = SeasonDataset(plate_appearances=rows)
    for pa in rows:
        data.parks.add(pa.ballpark_id)
        for pid in (pa.batter_id, pa.pitcher_id, *pa.fielder_ids):
            data.roster.setdefault(pid, pid)
        for _, rid, _ in pa.runners():
            data.roster.setdefault(rid, rid)

    # runs-to-inning-end, averaged per start state (done by hand):
    #   top 1:    6,6,6,6,2,2,2,0,0,0,0
    #   bottom 1: 5,5,5,5,5,2,2,0,0
    #   top 2:    5,5,5,5,5,5,2,1,1,0
    expected_rho = {
        (0, 0): 4.5, (0, 1): 2.0, (0, 2): 6.0, (0, 3): 2.0,
        (0, 4): 0.0, (0, 5): 6.0, (0, 6): 0.0, (0, 7): 6.0,
        (1, 0): 5.0, (1, 1): 0.0, (1, 2): 5.0, (1, 3): 0.0,
        (1, 4): 2.0, (1, 5): 5.0, (1, 6): 1.0, (1, 7): 5.0,
        (2, 0): 5.0, (2, 1): 5.0, (2, 2): 1.0, (2, 3): 1.0,
        (2, 4): 2.0, (2, 5): 5.0, (2, 6): 0.0, (2, 7): 5.0,
    }
    expected_counts = {key: 1 for key in expected_rho}
    expected_counts[(0, 0)] = 4
    expected_counts[(1, 0)] = 2
    expected_counts[(1, 6)] = 2
    expected_counts[(2, 6)] = 2
    return data, expected_rho, expected_counts
