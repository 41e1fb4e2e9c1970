"""Data model, parsing, validation, and serialization tests."""

import dataclasses

import pytest

from openwar.events import (
    BALL_IN_PLAY,
    CSV_COLUMNS,
    EVENT_TYPES,
    PITCHER_ONLY,
    ChainError,
    GameState,
    RecordError,
    SchemaError,
    SeasonDataset,
    TaxonomyError,
    aggregate_team_totals,
    parse_season,
    serialize_season,
    validate_dataset,
)

from fixtures import build_re_fixture, make_pa


def test_taxonomy_is_closed():
    assert len(EVENT_TYPES) == 32
    assert len(set(EVENT_TYPES)) == 32
    assert set(BALL_IN_PLAY) == set(EVENT_TYPES)


def test_pitcher_only_events():
    assert PITCHER_ONLY == {
        "Strikeout", "Walk", "Intent Walk", "Hit By Pitch", "Home Run",
        "Catcher Interference", "Batter Interference", "Strikeout - DP",
        "null",
    }
    assert BALL_IN_PLAY["Groundout"]
    assert not BALL_IN_PLAY["Home Run"]


def test_game_state_basics():
    s = GameState(1, 5)
    assert s.occupied(1) and not s.occupied(2) and s.occupied(3)
    assert s.live
    with pytest.raises(RecordError):
        GameState(4, 0)
    with pytest.raises(RecordError):
        GameState(0, 8)


def test_three_out_state_normalizes_bases():
    assert GameState(3, 6) == GameState(3, 0)
    assert not GameState(3, 0).live


def test_outs_on_play_and_runners():
    pa = make_pa("AWY@HOM-0001", 0, 1, "top", 0, 3,
                 "Grounded Into DP", "O", {1: "O", 2: "3B"})
    assert pa.outs_on_play == 2
    assert list(pa.runners()) == [(1, "R1", "O"), (2, "R2", "3B")]
    assert pa.end_state == GameState(2, 4)


def test_serialize_parse_round_trip():
    data, _, _ = build_re_fixture()
    text = serialize_season(data)
    parsed, report = parse_season(text, "strict")
    assert report.ok and report.dropped == 0
    assert serialize_season(parsed) == text
    assert parsed.plate_appearances == data.plate_appearances


def test_parse_skips_comment_lines():
    data, _, _ = build_re_fixture()
    text = "# config: {}\n" + serialize_season(data)
    parsed, report = parse_season(text, "strict")
    assert len(parsed) == len(data)


def test_parse_rejects_bad_header():
    with pytest.raises(SchemaError):
        parse_season("a,b,c\n1,2,3\n")
    # a missing required column is also a schema error
    data, _, _ = build_re_fixture()
    lines = serialize_season(data).splitlines()
    header = ",".join(c for c in lines[0].split(",") if c != "bip_x")
    with pytest.raises(SchemaError):
        parse_season("\n".join([header] + lines[1:]))


def test_parse_rejects_unknown_event():
    data, _, _ = build_re_fixture()
    text = serialize_season(data).replace("Groundout", "Ground Rule Kerfuffle")
    with pytest.raises(TaxonomyError):
        parse_season(text, "strict")
    # taxonomy violations are fatal even in lenient mode
    with pytest.raises(TaxonomyError):
        parse_season(text, "lenient")


def test_strict_raises_lenient_drops():
    data, _, _ = build_re_fixture()
    bad = dataclasses.replace(data.plate_appearances[0], runs_scored=9)
    rows = [bad] + data.plate_appearances[1:]
    text = serialize_season(SeasonDataset(plate_appearances=rows))
    with pytest.raises(RecordError):
        parse_season(text, "strict")
    parsed, report = parse_season(text, "lenient")
    assert report.dropped == 1
    assert len(parsed) == len(data) - 1


def test_bip_presence_must_match_event():
    pa = make_pa("AWY@HOM-0001", 0, 1, "top", 0, 0, "Walk", "1B")
    no_coords = dataclasses.replace(
        make_pa("AWY@HOM-0001", 1, 1, "top", 0, 1, "Single", "1B", {1: "2B"}),
        bip_location=None)
    with_coords = dataclasses.replace(pa, bip_location=(10.0, 10.0))
    for bad in (no_coords, with_coords):
        report = validate_dataset(
            SeasonDataset(plate_appearances=[bad]), strict=False)
        assert any("bip" in e or "location" in e for e in report.errors)


def test_chain_break_strict_vs_lenient():
    data, _, _ = build_re_fixture()
    rows = list(data.plate_appearances)
    # make the second record start from the wrong state
    rows[1] = make_pa("AWY@HOM-0001", 1, 1, "top", 1, 0, "Single", "1B")
    broken = SeasonDataset(plate_appearances=rows)
    with pytest.raises(ChainError):
        validate_dataset(broken, strict=True)
    report = validate_dataset(broken, strict=False)
    assert any("chain break" in w for w in report.warnings)


def test_half_inning_must_start_clean():
    rows = [make_pa("AWY@HOM-0001", 0, 1, "top", 1, 0, "Strikeout", "O")]
    with pytest.raises(ChainError):
        validate_dataset(SeasonDataset(plate_appearances=rows), strict=True)


def test_parse_builds_roster_and_parks():
    data, _, _ = build_re_fixture()
    parsed, _ = parse_season(serialize_season(data))
    assert "B1" in parsed.roster and "P1" in parsed.roster
    assert "R1" in parsed.roster  # runners belong to the roster too
    assert parsed.parks == {"PK"}


def test_optional_credited_column_round_trips():
    pa = make_pa("AWY@HOM-0001", 0, 1, "top", 0, 0, "Flyout", "O",
                 credited="CF")
    data = SeasonDataset(plate_appearances=[pa])
    parsed, _ = parse_season(serialize_season(data))
    assert parsed.plate_appearances[0].credited_fielder_position == "CF"
    # the column may be omitted entirely
    parsed2, _ = parse_season(serialize_season(data, include_credited=False))
    assert parsed2.plate_appearances[0].credited_fielder_position is None


def test_csv_column_order_is_stable():
    assert CSV_COLUMNS[0] == "game_id"
    assert CSV_COLUMNS[-2:] == ("bip_x", "bip_y")
    data, _, _ = build_re_fixture()
    header = serialize_season(data).splitlines()[0]
    assert header == ",".join(CSV_COLUMNS + ("credited_fielder_position",))


def test_aggregate_team_totals_hand_case():
    g = "AWY@HOM-0001"
    rows = [
        make_pa(g, 0, 1, "top", 0, 0, "Home Run", "H"),
        make_pa(g, 1, 1, "top", 0, 0, "Walk", "1B"),
        make_pa(g, 2, 1, "top", 0, 1, "Strikeout", "O", {1: "1B"}),
        make_pa(g, 3, 1, "bottom", 0, 0, "Single", "1B"),
        make_pa(g, 4, 1, "bottom", 0, 1, "Sac Bunt", "O", {1: "2B"}),
    ]
    totals = aggregate_team_totals(SeasonDataset(plate_appearances=rows))
    assert totals["AWY"] == {"G": 1, "PA": 3, "AB": 2, "R": 1, "H": 1,
                             "HR": 1, "BB": 1, "K": 1}
    assert totals["HOM"] == {"G": 1, "PA": 2, "AB": 1, "R": 0, "H": 1,
                             "HR": 0, "BB": 0, "K": 0}


def test_aggregate_runs_match_season_totals(season):
    totals = aggregate_team_totals(season)
    assert sum(t["R"] for t in totals.values()) == \
        sum(pa.runs_scored for pa in season.plate_appearances)
    assert sum(t["PA"] for t in totals.values()) == len(season)
