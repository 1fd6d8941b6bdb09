"""End-to-end checks of the command line: example invocations, file I/O,
output formats, and exit codes."""

import json

from imsetkit.cli import main
from imsetkit.groundset import GroundSet, Triplet
from imsetkit.imsets import Imset, configuration, semi_elementary
from imsetkit.relations import basic_moves


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def run_json(capsys, *argv):
    code, out = run(capsys, *argv)
    data = json.loads(out)
    assert data["schema"] == "imset-kit/1"
    return code, data


def write_four_generator_imset(path):
    g = GroundSet(4)
    u = Imset.zero(g)
    for s in ("a|b|0", "a|b|c", "a|b|d", "c|d|ab"):
        u = u + semi_elementary(Triplet.parse(g, s))
    path.write_text(json.dumps({"ground": "abcd", "values": u.to_dict()}))
    return u


def test_config_csv_matches_golden(capsys, tmp_path):
    code, out = run(capsys, "config", "--n", "4", "--format", "csv")
    assert code == 0
    assert out == configuration(GroundSet(4)).to_csv()


def test_config_json_shape(capsys):
    code, data = run_json(capsys, "config", "--n", "3")
    assert code == 0
    assert data["ground"] == "abc"
    assert len(data["column_labels"]) == 6
    assert len(data["matrix"]) == 8
    # the matrix rows follow the row labels, columns the column labels
    assert data["row_labels"][0] == "0" and data["row_labels"][-1] == "abc"


def test_markov_n4_counts(capsys):
    code, data = run_json(capsys, "markov", "--n", "4", "--degree-cap", "4")
    assert code == 0
    assert data["per_degree_counts"] == {"2": 2, "3": 1, "4": 4}
    assert data["complete"] is True
    assert len(data["representatives"]) == 7


def test_markov_csv(capsys):
    code, out = run(capsys, "markov", "--n", "4", "--degree-cap", "4", "--format", "csv")
    assert code == 0
    assert out == "degree,representatives\n2,2\n3,1\n4,4\n"


def test_markov_sub_configuration(capsys):
    code, data = run_json(
        capsys, "markov", "--n", "4", "--sub", "ab|cd|0", "--degree-cap", "4"
    )
    assert code == 0
    assert data["per_degree_counts"] == {"2": 2, "4": 4}
    assert data["complete"] is False


def test_face_example(capsys):
    code, data = run_json(capsys, "face", "a|b|cd", "--n", "4")
    assert code == 0
    assert data["dimension"] == 1
    assert data["extreme_set"] == ["a|b|cd"]
    assert len(data["orthogonal_set"]) == 15


def test_ci_model_of_imset_excludes_last_generator(capsys, tmp_path):
    path = tmp_path / "u.json"
    write_four_generator_imset(path)
    code, data = run_json(capsys, "ci-model", "--imset", str(path))
    assert code == 0
    assert data["statements"] == ["a|b|0", "a|b|c", "a|b|d", "c|d|ab"]
    assert "a|b|cd" not in data["statements"]


def test_face_of_four_generators(capsys, tmp_path):
    path = tmp_path / "u.json"
    write_four_generator_imset(path)
    code, data = run_json(capsys, "face-of", str(path))
    assert code == 0
    assert data["face"] == ["a|b|0", "a|b|c", "a|b|d", "c|d|ab"]


def test_classify_imset(capsys, tmp_path):
    path = tmp_path / "u.json"
    write_four_generator_imset(path)
    code, data = run_json(capsys, "classify-imset", str(path))
    assert code == 0
    assert data["class"] == "combinatorial"
    assert data["degree"] == 4
    assert sum(data["witness"].values()) == 4


def test_construct_roundtrips_through_files(capsys, tmp_path):
    # construct writes a file the other commands accept as input
    path = tmp_path / "f.json"
    code, _ = run(capsys, "construct", "--family", "max-k", "--n", "4", "--k", "2",
                  "-o", str(path))
    assert code == 0
    code, data = run_json(capsys, "skeletal", str(path))
    assert code == 0
    assert data["supermodular"] is True
    assert data["skeletal"] is True

    code, data = run_json(capsys, "check-supermodular", str(path))
    assert code == 0
    assert data["supermodular"] is True and data["violation"] is None


def test_construct_product_and_extensions(capsys, tmp_path):
    base = tmp_path / "base.json"
    code, _ = run(capsys, "construct", "--family", "max-k", "--ground", "ab",
                  "--k", "1", "-o", str(base))
    assert code == 0
    other = tmp_path / "other.json"
    code, _ = run(capsys, "construct", "--family", "max-k", "--ground", "cd",
                  "--k", "1", "-o", str(other))
    assert code == 0
    code, data = run_json(capsys, "construct", "--family", "product",
                          "--input", str(base), "--input2", str(other))
    assert code == 0
    assert data["ground"] == "abcd"

    code, data = run_json(capsys, "construct", "--family", "zero-slice",
                          "--input", str(base), "--label", "e")
    assert code == 0
    assert data["ground"] == "abe"


def test_construct_indicator_not_supermodular_detected(capsys, tmp_path):
    path = tmp_path / "g.json"
    code, _ = run(capsys, "construct", "--family", "indicator", "--ground", "abc",
                  "--set", "ab", "-o", str(path))
    assert code == 0
    code, data = run_json(capsys, "skeletal", str(path))
    assert code == 0
    assert data["skeletal"] is True


def test_decompose(capsys):
    code, data = run_json(capsys, "decompose", "ab|cd|0", "--n", "4")
    assert code == 0
    assert len(data["terms"]) == 4
    assert all(t["coefficient"] == 1 for t in data["terms"])


def test_closure(capsys, tmp_path):
    path = tmp_path / "s.json"
    path.write_text(json.dumps({"ground": "abc", "statements": ["a|b|c", "a|c|0"]}))
    code, data = run_json(capsys, "closure", str(path))
    assert code == 0
    # sorted as plain strings, so "a|bc|0" precedes "a|b|0"
    assert data["statements"] == ["a|bc|0", "a|b|0", "a|b|c", "a|c|0", "a|c|b"]
    assert data["statements"] == sorted(data["statements"])


def test_reduce_resums(capsys, tmp_path):
    g = GroundSet(4)
    move = basic_moves(g)[5]
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"ground": "abcd", **move.to_json()}))
    code, data = run_json(capsys, "reduce", str(path))
    assert code == 0
    # the reported combination re-sums to the input move
    total = [0] * g.num_elementary
    from imsetkit.relations import Move

    for term in data["terms"]:
        m = Move.from_json(g, term)
        for j, c in enumerate(m.coeffs):
            total[j] += term["coefficient"] * c
    assert tuple(total) == move.coeffs


def test_relations_counts(capsys):
    code, data = run_json(capsys, "relations", "--n", "3", "--k", "2",
                          "--degree-max", "4", "--coeff-bound", "2")
    assert code == 0
    assert data["count"] == 6
    assert data["by_classification"] == {"two-by-two-semigraphoid": 6}


def test_ci_model_of_distribution(capsys, tmp_path):
    from imsetkit.ci import JointTable

    g = GroundSet(3)
    pa = [0.3, 0.7]
    pc_a = [[0.8, 0.2], [0.25, 0.75]]
    pb_c = [[0.6, 0.4], [0.1, 0.9]]
    probs = []
    for ia in range(2):
        for ib in range(2):
            for ic in range(2):
                probs.append(pa[ia] * pc_a[ia][ic] * pb_c[ic][ib])
    path = tmp_path / "P.json"
    path.write_text(json.dumps(JointTable(g, (2, 2, 2), tuple(probs)).to_json()))
    code, data = run_json(capsys, "ci-model", "--dist", str(path))
    assert code == 0
    assert data["statements"] == ["a|b|c"]


def test_verify_quick_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "quick", "--format", "text")
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[-1].endswith("criteria passed")
    assert all("PASS" in l for l in lines[:-1])


def test_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("not json")
    code, _ = run(capsys, "classify-imset", str(bad))
    assert code == 2

    code, _ = run(capsys, "ci-model")
    assert code == 2

    code, _ = run(capsys, "face", "a|b|zz", "--n", "4")
    assert code == 2

    code, _ = run(capsys, "markov", "--n", "6", "--degree-cap", "4")
    assert code == 3

    # missing file
    code, _ = run(capsys, "skeletal", str(tmp_path / "absent.json"))
    assert code == 2


def test_output_flag_and_threads_do_not_change_results(capsys, tmp_path):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    code, _ = run(capsys, "markov", "--n", "3", "--degree-cap", "2", "-o", str(out_a))
    assert code == 0
    code, _ = run(capsys, "markov", "--n", "3", "--degree-cap", "2", "--threads", "8",
                  "-o", str(out_b))
    assert code == 0
    assert out_a.read_text() == out_b.read_text()


def test_text_format_renders_imsets(capsys):
    code, out = run(capsys, "decompose", "a|b|cd", "--n", "4", "--format", "text")
    assert code == 0
    assert out.strip() == "u_<a|b|cd> = u_<a|b|cd>"

    code, out = run(capsys, "face", "ab|cd|0", "--n", "4", "--format", "text")
    assert code == 0
    assert "dimension: 9" in out
