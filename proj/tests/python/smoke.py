"""End-to-end smoke checks for the compiled python module."""

import math

import fuzzrank


def main() -> None:
    # Dataset loading via the data-dir search path.
    pima = fuzzrank.load_csv("pima.csv", "Outcome", "pima")
    assert pima.n_samples == 768
    assert pima.n_features == 8
    assert pima.name == "pima"
    assert sorted(set(pima.labels)) == [0, 1]
    assert len(pima.feature_names) == 8

    wbc = fuzzrank.load_wbc("wbc_original.csv")
    assert wbc.n_samples == 683
    assert wbc.n_features == 9

    # Small helpers.
    assert fuzzrank.discretize(0.337) == 0.34
    assert fuzzrank.normalize_scores([2.0, 4.0, 6.0]) == [0.0, 0.5, 1.0]
    assert fuzzrank.pearson([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 1.0
    assert math.isnan(fuzzrank.pearson([1.0, 2.0], [5.0, 5.0]))

    # Stratified folds partition the samples.
    folds = fuzzrank.kfold_split(pima, 5, 42)
    assert sorted(len(f) for f in folds) == [153, 153, 154, 154, 154]
    seen = sorted(i for f in folds for i in f)
    assert seen == list(range(768))

    # Base scorer.
    mi = fuzzrank.score(pima, "mi")
    assert len(mi) == 8
    assert all(v >= 0.0 for v in mi)

    # Full ranking pipeline, deterministic per seed.
    result = fuzzrank.rank_features(pima, scheme="ow", subsets=15, seed=7)
    assert result["scheme"] == "ow"
    assert result["L"] == 15
    assert sorted(result["ranking"]) == list(range(8))
    assert all(0.0 <= s <= 1.0 for s in result["scores"])
    again = fuzzrank.rank_features(pima, scheme="ow", subsets=15, seed=7)
    assert again["scores"] == result["scores"]
    assert again["ranking"] == result["ranking"]

    other_scheme = fuzzrank.rank_features(pima, scheme="mw", subsets=15, seed=7)
    assert other_scheme["scheme"] == "mw"
    assert sorted(other_scheme["ranking"]) == list(range(8))

    # Subsampling keeps both classes and the requested size.
    sub = fuzzrank.subsample(pima, 0.5, 3)
    assert sub.n_samples == 384
    assert sorted(set(sub.labels)) == [0, 1]

    # Stability metrics on simple vectors.
    asd = fuzzrank.compute_asd([[0.0, 0.4], [0.2, 0.8]])
    assert abs(asd - 0.15) < 1e-12
    apc = fuzzrank.compute_apc([[0.1, 0.2, 0.9], [0.2, 0.4, 1.8]])
    assert abs(apc - 1.0) < 1e-12

    print("smoke ok")


if __name__ == "__main__":
    main()
