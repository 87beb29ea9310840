"""Smoke tests for the Python bindings."""

import math
import textwrap

import pytest

import freshtab


CONFIG_YAML = textwrap.dedent(
    """
    language: en
    cutoff_date: 2025-02-01
    collection_end: 2025-05-31
    target_count: 100
    domain_quota:
      sport: 73
      other: 13
      culture: 11
      politics: 3
    rng_seed: 42
    variant_name: lot
    """
)

PAGE_HTML = """
<html><body>
<table class="wikitable"><caption>Group D</caption>
<tr><th>Pos</th><th>Team</th><th>Points</th></tr>
<tr><td>1</td><td>France[1]</td><td>9</td></tr>
<tr><td>2</td><td>Iceland</td><td>7</td></tr>
<tr><td>3</td><td>Ukraine</td><td>&mdash;</td></tr>
<tr><td>4</td><td>Gibraltar</td><td>0</td></tr>
<tr><td>5</td><td>Norway</td><td>4</td></tr>
</table>
<table class="navbox"><tr><td>navigation</td></tr></table>
</body></html>
"""


def test_config_round_trip():
    cfg = freshtab.parse_config(CONFIG_YAML)
    assert cfg.language == "en"
    assert cfg.domain_quota == {"sport": 73, "other": 13, "culture": 11, "politics": 3}
    assert freshtab.dataset_name(cfg) == "FreshTab.2-5/25.en.lot"
    again = freshtab.parse_config(freshtab.config_to_yaml(cfg))
    assert freshtab.dataset_name(again) == freshtab.dataset_name(cfg)


def test_invalid_config_raises():
    with pytest.raises(ValueError):
        freshtab.parse_config(CONFIG_YAML.replace("rng_seed: 42", "ops_per_table: 10"))


def test_extract_and_clean_table():
    tables = freshtab.extract_tables(PAGE_HTML)
    assert len(tables) == 1  # the navbox is not a data table
    limits = freshtab.TableLimits(min_rows=3)
    outcome = freshtab.clean_table(tables[0], limits)
    assert outcome["accepted"]
    table = outcome["table"]
    assert table.header == ["Pos", "Team", "Points"]
    assert table.rows[0] == ["1", "France", "9"]  # reference marker stripped
    assert table.rows[2] == ["3", "Ukraine", ""]  # non-value consolidated
    text = freshtab.serialize_table(table)
    assert text.splitlines()[0] == "Group D"
    assert "France | 9" in text


def test_operation_sampling_is_deterministic():
    ops = freshtab.sample_operations("entry-1", 5, 42)
    assert len(ops) == 5
    assert len(set(ops)) == 5
    assert ops == freshtab.sample_operations("entry-1", 5, 42)
    names = {name for name, _, _ in freshtab.logical_operations()}
    assert len(names) == 9
    assert set(ops) <= names


def test_prompts_embed_the_table():
    tables = freshtab.extract_tables(PAGE_HTML)
    limits = freshtab.TableLimits(min_rows=3)
    table = freshtab.clean_table(tables[0], limits)["table"]
    direct = freshtab.direct_prompt(table, "superlative")
    assert freshtab.serialize_table(table) in direct
    choice = freshtab.choice_prompt(table)
    assert "five" in choice
    judge = freshtab.judge_prompt(table, "France leads the group.")
    assert "France leads the group." in judge


def test_metrics_and_stats():
    assert freshtab.tokenize("France is in group D.") == ["france", "is", "in", "group", "d"]
    assert freshtab.shannon_entropy(["a a", "b c"]) == 1.5
    assert freshtab.self_bleu4(["x y z w q", "x y z w q"]) == pytest.approx(1.0)
    assert freshtab.unique_tokens(["a b", "a b c d"]) == 3.0

    z, p = freshtab.z_test_proportions(417, 500, 777, 1000)
    assert 0.005 <= p <= 0.015
    assert z > 0

    assert freshtab.pearson([1, 2, 3], [2, 4, 6]) == pytest.approx(1.0)
    with pytest.raises(ValueError):
        freshtab.self_bleu4(["just one"])


def test_entry_ids_are_stable():
    first = freshtab.entry_id("https://en.wikipedia.org/wiki/X")
    assert first == freshtab.entry_id("https://en.wikipedia.org/wiki/X")
    assert len(first) == 16
