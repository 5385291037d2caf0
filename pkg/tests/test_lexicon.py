"""
Lexicon Tests
Canonical order, pruning, merging, folding, ranking and the TSV format
"""

import sys
from pathlib import Path

import pytest
from hypothesis import given, settings

# Add src to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.errors import ConfigurationError, MalformedDataError
from src.lexicon.lexicon import Lexicon, fold, merge, prune_singletons, rank_promising
from src.lexicon.lexicon_io import (
    format_lexicon_tsv,
    format_reinforcement_report,
    parse_lexicon_tsv,
    read_lexicon_tsv,
    write_lexicon_tsv,
)
from tests.strategies import lexicon_maps


def test_canonical_order():
    lexicon = Lexicon({"以色列": 4, "欧盟": 9, "阿拉法特": 5, "甲乙": 9})
    assert lexicon.entries() == ["阿拉法特", "以色列", "欧盟", "甲乙"]


def test_update_adds_one_per_occurrence():
    lexicon = Lexicon()
    lexicon.update(["甲乙", "丙", "甲乙"])
    assert lexicon == {"甲乙": 2, "丙": 1}
    assert lexicon.count("丁") == 0


def test_empty_entry_is_rejected():
    with pytest.raises(ValueError):
        Lexicon().add("")


def test_prune_keeps_counts_at_threshold():
    lexicon = Lexicon({"甲乙": 3, "丙丁": 1, "丙戊": 1, "己": 1})
    assert prune_singletons(lexicon) == {"甲乙": 3}
    assert prune_singletons(lexicon, min_count=1) == lexicon
    assert prune_singletons(lexicon, min_count=4) == {}
    assert len(lexicon) == 4


def test_prune_rejects_zero_threshold():
    with pytest.raises(ConfigurationError):
        prune_singletons(Lexicon(), min_count=0)


def test_merge_sums_and_marks_shared_entries():
    merged = merge(Lexicon({"甲乙": 6}), Lexicon({"甲乙": 2, "丙丁": 4}))
    assert merged.lexicon == {"甲乙": 8, "丙丁": 4}
    assert merged.reinforced == {"甲乙"}
    assert merged.is_reinforced("甲乙")
    assert not merged.is_reinforced("丙丁")


def test_merge_marks_entries_found_again_in_a_new_document():
    """An Arafat news lexicon merged with one from a related newsgroup post"""
    news = Lexicon({"阿拉法特": 6, "巴勒斯坦": 4, "以色列": 3, "总理": 2, "领导": 2, "法国": 3, "治疗": 2})
    post = Lexicon({"巴勒斯坦": 3, "以色列": 5, "总理": 2, "领导": 3, "和平": 2, "美国": 2})

    merged = merge(news, post)

    assert merged.reinforced == {"巴勒斯坦", "以色列", "总理", "领导"}
    assert merged.lexicon.count("以色列") == 8
    assert merged.lexicon.count("和平") == 2
    assert merge(post, news).reinforced == merged.reinforced


def test_merge_with_empty_lexicon():
    merged = merge(Lexicon(), Lexicon({"甲乙": 2}))
    assert merged.lexicon == {"甲乙": 2}
    assert merged.reinforced == frozenset()


def test_fold_counts_documents():
    merged = fold([Lexicon({"甲乙": 6}), Lexicon({"甲乙": 5, "丙": 4}), Lexicon({"丁戊": 2})])
    assert merged.lexicon == {"甲乙": 11, "丙": 4, "丁戊": 2}
    assert merged.reinforced == {"甲乙"}
    assert merged.document_frequency == {"甲乙": 2, "丙": 1, "丁戊": 1}


def test_fold_counts_seed_as_an_input():
    merged = fold([Lexicon({"丙": 2})], seed=Lexicon({"丙": 3, "甲乙": 2}))
    assert merged.lexicon == {"丙": 5, "甲乙": 2}
    assert merged.reinforced == {"丙"}
    assert merged.document_frequency == {"丙": 2, "甲乙": 1}


def test_fold_of_nothing_is_empty():
    merged = fold([])
    assert len(merged.lexicon) == 0
    assert merged.reinforced == frozenset()


def test_rank_promising():
    lexicon = Lexicon({"阿拉法特": 5, "欧盟": 9, "以色列": 4})
    assert rank_promising(lexicon, 2) == ["阿拉法特", "以色列"]
    assert rank_promising(lexicon, 0) == []
    assert rank_promising(lexicon, 10) == ["阿拉法特", "以色列", "欧盟"]
    with pytest.raises(ConfigurationError):
        rank_promising(lexicon, -1)


def test_tsv_format():
    lexicon = Lexicon({"丙丁": 4, "甲乙": 8})
    assert format_lexicon_tsv(lexicon) == "甲乙\t8\n丙丁\t4\n"
    assert format_lexicon_tsv(lexicon, reinforced={"甲乙"}) == "甲乙\t8\tR\n丙丁\t4\tN\n"
    assert format_lexicon_tsv(Lexicon()) == ""


def test_reinforcement_report():
    merged = fold([Lexicon({"甲乙": 6}), Lexicon({"甲乙": 5, "丙": 4})])
    assert format_reinforcement_report(merged) == "甲乙\t11\t2\n丙\t4\t1\n"


def test_tsv_file_round_trip(tmp_path):
    path = tmp_path / "lex.tsv"
    lexicon = Lexicon({"阿拉法特": 5, "欧盟": 9})
    write_lexicon_tsv(lexicon, path, reinforced={"欧盟"})
    assert path.read_bytes() == "阿拉法特\t5\tN\n欧盟\t9\tR\n".encode("utf-8")
    assert read_lexicon_tsv(path) == lexicon


def test_parse_keeps_marks():
    lexicon, marks = parse_lexicon_tsv(["甲乙\t8\tR\n", "丙丁\t4\tN\n"])
    assert lexicon == {"甲乙": 8, "丙丁": 4}
    assert marks == {"甲乙": "R", "丙丁": "N"}


@pytest.mark.parametrize("line", [
    "甲乙",
    "甲乙\t0",
    "甲乙\t-2",
    "甲乙\tabc",
    "甲乙\t２",
    "\t3",
    "甲乙\t3\tX",
    "甲乙\t3\tR\textra",
    "abc\t3",
    "甲 乙\t3",
    "甲乙。\t3",
    "２００６\t3",
])
def test_parse_rejects_malformed_lines(line):
    with pytest.raises(MalformedDataError) as excinfo:
        parse_lexicon_tsv(["丙\t2", line], source="lex.tsv")
    assert excinfo.value.line_number == 2
    assert excinfo.value.exit_code == 3
    assert str(excinfo.value).startswith("lex.tsv:2: ")


def test_parse_rejects_duplicates():
    with pytest.raises(MalformedDataError):
        parse_lexicon_tsv(["甲乙\t2", "甲乙\t3"])


def test_read_rejects_invalid_utf8(tmp_path):
    path = tmp_path / "lex.tsv"
    path.write_bytes(b"\xfe\t2\n")
    with pytest.raises(MalformedDataError):
        read_lexicon_tsv(path)


@given(lexicon_maps, lexicon_maps)
@settings(max_examples=1000, deadline=None)
def test_merge_is_commutative(first, second):
    forward = merge(Lexicon(first), Lexicon(second))
    backward = merge(Lexicon(second), Lexicon(first))
    assert forward.lexicon == backward.lexicon
    assert forward.reinforced == backward.reinforced
    assert forward.lexicon.items() == backward.lexicon.items()
    for entry in forward.lexicon:
        assert forward.lexicon.count(entry) == first.get(entry, 0) + second.get(entry, 0)


@given(lexicon_maps)
@settings(max_examples=1000, deadline=None)
def test_tsv_parse_inverts_format(entries):
    lexicon = Lexicon(entries)
    parsed, marks = parse_lexicon_tsv(format_lexicon_tsv(lexicon).split("\n"))
    assert parsed == lexicon
    assert marks == {}
