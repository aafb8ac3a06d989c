import math
from collections import Counter

import pytest
from hypothesis import given, settings, strategies as st

from apptechminer.area_assign import (DIRECT_ABSTRACT, DIRECT_TITLE, LANGUAGE_MODEL, UNASSIGNED,
                                      AreaAssignment, AreaLanguageModel, CollectionModel,
                                      assign_all, assignments_to_csv, build_language_models,
                                      classify, direct_match, jm_probability, log_score,
                                      read_assignments_csv)
from apptechminer.errors import InvalidLambda, NoModels

from conftest import corpus_of, paper


def model(area, counts, prior=1):
    c = Counter(counts)
    return AreaLanguageModel(area, c, sum(c.values()), prior)


def collection(*models):
    coll = CollectionModel()
    for m in models:
        coll.token_counts.update(m.token_counts)
        coll.total_tokens += m.total_tokens
    return coll


def test_direct_match_title():
    p = paper("x", "Moses: Open source toolkit for statistical machine translation")
    assert direct_match(p, ["machine translation", "parsing"]) == ({"machine translation"},
                                                                    DIRECT_TITLE)


def test_direct_match_abstract_fallback():
    p = paper("x", "A new idea", abstract="We improve dependency parsing a lot.")
    assert direct_match(p, ["dependency parsing"]) == ({"dependency parsing"}, DIRECT_ABSTRACT)


def test_direct_match_multiple_and_token_boundaries():
    p = paper("x", "Machine translation with word alignment")
    hits, _ = direct_match(p, ["machine translation", "word alignment", "alignments"])
    assert hits == {"machine translation", "word alignment"}
    assert direct_match(paper("y", "Reparsing"), ["parsing"]) == (set(), None)


def test_build_language_models_counts():
    corpus = corpus_of(paper("p", "a b", abstract="b c"))
    models, coll = build_language_models(corpus, [AreaAssignment("p", "X", DIRECT_TITLE)])
    m = models["X"]
    assert dict(m.token_counts) == {"a": 1, "b": 2, "c": 1}
    assert (m.total_tokens, m.prior_count) == (4, 1)
    assert coll.total_tokens == 4


def test_priors_and_pooling():
    corpus = corpus_of(*(paper(f"p{i}", "alpha beta") for i in range(4)))
    single = [AreaAssignment(f"p{i}", "A" if i < 3 else "B", DIRECT_TITLE) for i in range(4)]
    models, coll = build_language_models(corpus, single)
    assert (models["A"].prior_count, models["B"].prior_count) == (3, 1)
    assert coll.total_tokens == models["A"].total_tokens + models["B"].total_tokens


def test_jm_probability_examples():
    m = model("X", {"t": 1, "u": 1})
    coll = CollectionModel(Counter({"t": 1, "u": 9}), 10)
    assert jm_probability("t", m, coll, 0.7) == pytest.approx(0.3 * 0.5 + 0.7 * 0.1)
    assert jm_probability("zzz", m, coll, 0.7) == 0.0


def test_jm_empty_model_has_no_area_term():
    coll = CollectionModel(Counter({"t": 2}), 2)
    assert jm_probability("t", AreaLanguageModel("X"), coll, 0.7) == pytest.approx(0.7)


@pytest.mark.parametrize("lam", [0.0, 1.0, -0.1, 1.5])
def test_invalid_lambda(lam):
    m = model("X", {"t": 1})
    with pytest.raises(InvalidLambda):
        jm_probability("t", m, collection(m), lam)


def test_jm_needs_collection():
    with pytest.raises(NoModels):
        jm_probability("t", AreaLanguageModel("X"), CollectionModel())


def test_classify_unique_tokens_win():
    a, b = model("A", {"alpha": 3, "shared": 1}), model("B", {"beta": 3, "shared": 1})
    coll = collection(a, b)
    got = classify(paper("q", "alpha alpha shared"), {"A": a, "B": b}, coll)
    assert (got.area, got.method) == ("A", LANGUAGE_MODEL)


def test_classify_prior_breaks_equal_models():
    a, b = model("A", {"x": 2}, prior=1), model("B", {"x": 2}, prior=3)
    got = classify(paper("q", "x"), {"A": a, "B": b}, collection(a, b))
    assert got.area == "B"


def test_classify_exact_tie_is_lexicographic():
    a, b = model("beta", {"x": 1}), model("alpha", {"x": 1})
    assert classify(paper("q", "x"), {"beta": a, "alpha": b}, collection(a, b)).area == "alpha"


def test_classify_filter():
    a, b, c = model("A", {"a": 1}), model("B", {"b": 1}), model("C", {"c": 5})
    models = {"A": a, "B": b, "C": c}
    got = classify(paper("q", "c c c"), models, collection(a, b, c), candidate_filter={"A", "B"})
    assert got.area in {"A", "B"}
    none = classify(paper("q", "c"), models, collection(a, b, c), candidate_filter={"Z"})
    assert (none.area, none.method) == (None, UNASSIGNED)


def test_classify_requires_models():
    with pytest.raises(NoModels):
        classify(paper("q", "x"), {}, CollectionModel())


def test_unseen_tokens_are_skipped():
    a, b = model("A", {"a": 1}, prior=2), model("B", {"b": 1})
    coll = collection(a, b)
    base = classify(paper("q", "a"), {"A": a, "B": b}, coll)
    noisy = classify(paper("q", "a qqq rrr"), {"A": a, "B": b}, coll)
    assert base == AreaAssignment("q", "A", LANGUAGE_MODEL, noisy.log_score)


def test_assign_all_all_direct():
    corpus = corpus_of(paper("a", "Fast parsing"), paper("b", "Better tagging"))
    got = assign_all(corpus, ["parsing", "tagging"])
    assert [(x.paper_id, x.area, x.method) for x in got] == [
        ("a", "parsing", DIRECT_TITLE), ("b", "tagging", DIRECT_TITLE)]


def test_assign_all_multi_match_uses_filter():
    corpus = corpus_of(
        paper("a1", "parsing of trees", abstract="tree bank"),
        paper("a2", "parsing with trees"),
        paper("b1", "tagging words"),
        paper("c1", "translation of words"),
        paper("m", "parsing and tagging for translation of words words words"))
    got = {x.paper_id: x for x in assign_all(corpus, ["parsing", "tagging", "translation"])}
    assert got["m"].method == LANGUAGE_MODEL
    assert got["m"].area in {"parsing", "tagging", "translation"}


def test_assign_all_no_match_empty_abstract_uses_title_tokens():
    corpus = corpus_of(paper("a", "parsing trees quickly"), paper("b", "tagging words"),
                       paper("q", "Trees again"))
    got = {x.paper_id: x for x in assign_all(corpus, ["parsing", "tagging"])}
    q = got["q"]
    assert (q.area, q.method) == ("parsing", LANGUAGE_MODEL)
    # hand trace: only "trees" is in the collection (5 tokens); prior 1
    p = 0.3 * (1 / 3) + 0.7 * (1 / 5)
    assert q.log_score == pytest.approx(math.log(1) + math.log(p))


def test_assign_all_without_models_is_unassigned():
    corpus = corpus_of(paper("a", "nothing here"))
    [x] = assign_all(corpus, ["parsing"])
    assert (x.area, x.method) == (None, UNASSIGNED)


def test_assign_all_threads_and_rerun_stable():
    corpus = corpus_of(*(paper(f"p{i}", t) for i, t in enumerate(
        ["parsing trees", "tagging words", "parsing tagging", "words trees", "other stuff"])))
    one = assign_all(corpus, ["parsing", "tagging"], threads=1)
    assert one == assign_all(corpus, ["parsing", "tagging"], threads=4)
    assert one == assign_all(corpus, ["parsing", "tagging"])


def test_assignments_csv_round_trip():
    rows = [AreaAssignment("a", "parsing", DIRECT_TITLE),
            AreaAssignment("b", "tagging", LANGUAGE_MODEL, -3.25),
            AreaAssignment("c", None, UNASSIGNED)]
    text = assignments_to_csv(rows)
    assert text.splitlines()[0] == "paper_id,area,method,log_score"
    assert read_assignments_csv(text) == rows


# properties

token = st.sampled_from(list("abcdefgh"))
count_maps = st.dictionaries(token, st.integers(1, 9), min_size=1, max_size=6)


@given(st.lists(count_maps, min_size=1, max_size=5))
def test_jm_models_are_distributions(maps):
    models = [model(f"A{i}", m, prior=i + 1) for i, m in enumerate(maps)]
    coll = collection(*models)
    for m in models:
        total = sum(jm_probability(t, m, coll, 0.7) for t in coll.token_counts)
        assert total == pytest.approx(1.0, abs=1e-9)


@given(st.lists(count_maps, min_size=2, max_size=4), st.lists(token, min_size=1, max_size=6),
       st.integers(2, 50))
def test_classify_invariant_under_prior_rescaling(maps, query, factor):
    models = {f"A{i}": model(f"A{i}", m, prior=i + 1) for i, m in enumerate(maps)}
    scaled = {a: model(a, m.token_counts, prior=m.prior_count * factor)
              for a, m in models.items()}
    q = paper("q", " ".join(query))
    assert classify(q, models, collection(*models.values())).area == \
        classify(q, scaled, collection(*scaled.values())).area


@given(st.lists(count_maps, min_size=2, max_size=4), st.lists(token, min_size=1, max_size=6))
@settings(max_examples=60)
def test_appending_exclusive_token_never_lowers_rank(maps, query):
    models = {f"A{i}": model(f"A{i}", m, prior=i + 1) for i, m in enumerate(maps)}
    models["A0"].token_counts["zz"] += 1
    models["A0"].total_tokens += 1
    coll = collection(*models.values())
    before = {a: log_score(list(query), m, coll) for a, m in models.items()}
    after = {a: log_score(list(query) + ["zz"], m, coll) for a, m in models.items()}
    beaten_before = sum(1 for a in models if before[a] > before["A0"])
    beaten_after = sum(1 for a in models if after[a] > after["A0"])
    assert beaten_after <= beaten_before
