import pytest

from conftest import make_pair
from explmine.metrics import (
    always_explained,
    ne_explanation_stats,
    retention_percentage,
    subset_f1,
)
from explmine.records import CandidateRecord, ReviewLabel
from explmine.spans import Candidate, CandidateFeatures, STAGE_WIKI

# published (tp, remaining, f1) cells; total positives = initial-step tp
TABLE_EN_DE = (173, [(173, 8977, 0.0378), (134, 3102, 0.0818), (93, 791, 0.1929), (44, 323, 0.1774)])
TABLE_EN_FR = (122, [(122, 6982, 0.0343), (95, 3350, 0.0547), (76, 1332, 0.1045), (18, 395, 0.0696)])
TABLE_EN_ZH = (402, [(402, 13541, 0.0577), (302, 7360, 0.0778), (194, 2557, 0.1311), (87, 1083, 0.1172)])


@pytest.mark.parametrize("table", [TABLE_EN_DE, TABLE_EN_FR, TABLE_EN_ZH])
def test_subset_f1_reproduces_published_cells(table):
    total_positives, rows = table
    for tp, remaining, expected in rows:
        assert subset_f1(tp, remaining, total_positives) == pytest.approx(expected, abs=1e-4)


def test_subset_f1_zero_tp():
    assert subset_f1(0, 100, 50) == 0.0


def test_subset_f1_preconditions():
    with pytest.raises(ValueError):
        subset_f1(1, 0, 5)
    with pytest.raises(ValueError):
        subset_f1(1, 5, 0)
    with pytest.raises(ValueError):
        subset_f1(6, 5, 10)
    with pytest.raises(ValueError):
        subset_f1(6, 10, 5)


RETENTION_CELLS = [
    (44, 323, 0.1362),
    (294, 2832, 0.1038),
    (18, 395, 0.0456),
    (334, 4051, 0.0824),
    (87, 1083, 0.0803),
    (233, 3149, 0.0740),
]


@pytest.mark.parametrize("tp,remaining,expected", RETENTION_CELLS)
def test_retention_reproduces_published_cells(tp, remaining, expected):
    assert retention_percentage(tp, remaining) == pytest.approx(expected, abs=1e-4)


def test_retention_zero_tp():
    assert retention_percentage(0, 10) == 0.0


def test_retention_preconditions():
    with pytest.raises(ValueError):
        retention_percentage(1, 0)
    with pytest.raises(ValueError):
        retention_percentage(11, 10)


def wiki_record(pair_id, pair, k=1, m=1, n=3, ne_span=(1, 2)):
    cand = Candidate(
        pair_id, k, m, n, CandidateFeatures(True, True, True),
        stage=STAGE_WIKI, ne_span=ne_span, wiki_decision="SRC_ONLY",
    )
    return CandidateRecord(cand, pair.src_tokens, pair.tgt_tokens)


def accept(record, annotator="ann", ts="2026-01-01T00:00:00+00:00"):
    return ReviewLabel(record.candidate_id, "EXPLANATION", annotator, ts)


def reject(record, annotator="ann", ts="2026-01-01T00:00:00+00:00"):
    return ReviewLabel(record.candidate_id, "NOT_EXPLANATION", annotator, ts)


def entity_pair(pair_id, with_explanation=True):
    if with_explanation:
        return make_pair(pair_id, "the Bunyan said x", "der Bunyan , a b sagte x",
                         [(0, 0), (1, 1), (2, 5), (3, 6)])
    return make_pair(pair_id, "the Bunyan ran", "der Bunyan lief", [(0, 0), (1, 1), (2, 2)])


def test_ne_stats_single_occurrence():
    pair = entity_pair(0)
    record = wiki_record(0, pair)
    stats = ne_explanation_stats([accept(record)], [record], [pair], "en")
    assert len(stats) == 1
    assert stats[0].phrase == "bunyan"
    assert stats[0].occurrences == 1
    assert stats[0].explained_count == 1
    assert stats[0].probability == 1.0
    assert [s.phrase for s in always_explained(stats)] == ["bunyan"]


def test_ne_stats_always_explained_frequency_4():
    pairs = [entity_pair(i) for i in range(4)]
    records = [wiki_record(i, p) for i, p in enumerate(pairs)]
    labels = [accept(r) for r in records]
    stats = ne_explanation_stats(labels, records, pairs, "en")
    assert stats[0].occurrences == 4
    assert stats[0].explained_count == 4
    assert stats[0].probability == 1.0
    assert always_explained(stats)[0].explained_count == 4


def test_ne_stats_partial_probability():
    explained = [entity_pair(i) for i in range(2)]
    unexplained = [entity_pair(i + 2, with_explanation=False) for i in range(3)]
    records = [wiki_record(i, p) for i, p in enumerate(explained)]
    labels = [accept(r) for r in records]
    stats = ne_explanation_stats(labels, records, explained + unexplained, "en")
    assert stats[0].occurrences == 5
    assert stats[0].explained_count == 2
    assert stats[0].probability == pytest.approx(0.4)
    assert always_explained(stats) == []


def test_ne_stats_rejected_candidates_do_not_count():
    pair = entity_pair(0)
    record = wiki_record(0, pair)
    stats = ne_explanation_stats([reject(record)], [record], [pair], "en")
    assert stats == []


def test_ne_stats_stemmed_occurrence_matching():
    # "Pilgrims" in another pair counts as an occurrence of entity "Pilgrim"
    explained = make_pair(0, "the Pilgrim said x", "der Pilger , a b sagte x",
                          [(0, 0), (1, 1), (2, 5), (3, 6)])
    other = make_pair(1, "many Pilgrims arrived", "viele Pilger kamen", [(0, 0), (1, 1), (2, 2)])
    record = wiki_record(0, explained)
    stats = ne_explanation_stats([accept(record)], [record], [explained, other], "en")
    assert stats[0].occurrences == 2
    assert stats[0].probability == 0.5
