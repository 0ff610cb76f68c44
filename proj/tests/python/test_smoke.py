import csv

import pytest

import rtpol


def test_planted_network_splits_into_two_blocks():
    net, camp = rtpol.planted_network(seed=3)
    assert len(net) == len(camp)
    verdict = rtpol.select_model(net, seed=1)
    assert verdict["verdict"] == "TWO_BLOCKS"
    assert verdict["dl_two"] < verdict["dl_one"]
    assert verdict["silhouette"] > 0.4
    partition = verdict["partition"]
    assert set(partition.values()) == {-1, 1}
    agree = sum((partition[u] == 1) == (c == 1) for u, c in camp.items() if u in partition)
    assert max(agree, len(partition) - agree) == len(partition)


def test_description_length_prefers_planted_split():
    net, camp = rtpol.planted_network(per_camp=30, p_within=0.3, p_cross=0.01, seed=5)
    one = rtpol.description_length(net, {u: 0 for u in net.nodes})
    two = rtpol.description_length(net, camp)
    assert two < one


def test_network_merges_repeated_retweets():
    net = rtpol.Network([("a", "b"), ("a", "b"), ("c", "b")], "t1")
    assert net.nodes == ["a", "b", "c"]
    assert sorted(net.edges) == [("a", "b", 2), ("c", "b", 1)]
    assert net.total_weight() == 3


def test_similarity_label_invariance():
    a = [0, 0, 1, 1, 2, 2]
    b = [5, 5, 3, 3, 4, 4]
    s = rtpol.similarity(a, b)
    assert s["ari"] == pytest.approx(1.0)
    assert s["anmi"] == pytest.approx(1.0)
    assert rtpol.adjusted_rand_index(a, [0, 1, 0, 1, 0, 1]) < 0.1


def test_silhouette_two_point_clusters():
    points = [(0.0, 0.0), (0.0, 1.0), (10.0, 0.0), (10.0, 1.0)]
    score = rtpol.silhouette_score(points, [0, 0, 1, 1])
    assert 0.89 < score < 0.91


def test_alignment_and_camps():
    vectors = [{"a": 1, "b": 1, "c": -1, "d": -1}] * 3
    users, alpha = rtpol.alignment_matrix(vectors, ["a", "b", "c", "d"])
    assert users == ["a", "b", "c", "d"]
    assert alpha[0][1] == pytest.approx(1.0)
    assert alpha[0][2] == pytest.approx(-1.0)
    camps = rtpol.camps(vectors, users)
    assert camps["a"] == camps["b"] != camps["c"] == camps["d"]


def test_pipeline_stages(tmp_path):
    settings = {
        "synth.trends_per_topic": "4",
        "synth.n_regular": "400",
        "power_user_k": "50",
        "layout_iterations": "200",
        "sbm_runs": "3",
    }
    with pytest.raises(rtpol.StageError):
        rtpol.run_stage("cluster", tmp_path, settings)
    rtpol.run_stage("synth", tmp_path, settings)
    rtpol.run_stage("all", tmp_path, settings)
    with open(tmp_path / "verdicts.csv", newline="") as f:
        rows = list(csv.DictReader(f))
    assert len(rows) == 16
    assert {r["verdict"] for r in rows} <= {"ONE_BLOCK", "TWO_BLOCKS"}
    assert (tmp_path / "table1.csv").exists()
    assert (tmp_path / "similarity.csv").exists()
