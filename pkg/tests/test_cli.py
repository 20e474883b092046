import hashlib
import json
from pathlib import Path

import pytest
from hypothesis import given, settings, strategies as st

from conftest import pipeline, weak
from dualinv.cli import DocumentError, from_document, load, parse, save, to_document
from dualinv.cli.generate import generate
from dualinv.cli.main import ALREADY_STRICT, main
from dualinv.cli.mutate import candidates, mutate
from dualinv.weakside import has_nonidentity_constraints, involution_to_vbicat, lift_strict, validate_weak_involution
from dualinv.varcat import sample_cat_sub


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def structures():
    """One instance of every document kind, built in-process."""
    R = pipeline("B2", 1, "onestep")
    return {
        "fincat": generate("chain", n=3)[1],
        "vobj": sample_cat_sub("1,D2").hom[("1", "D2")],
        "contra2cat": sample_cat_sub("1,D2"),
        "vbicat": involution_to_vbicat(weak("B2", 1)),
        "weak-involution": weak("B2", 1),
        "duality-pseudofunctor": R.duality,
        "certificate": R.certificate,
    }


KINDS = ["fincat", "vobj", "contra2cat", "vbicat", "weak-involution", "duality-pseudofunctor", "certificate"]


@pytest.mark.parametrize("kind", KINDS)
def test_round_trip_is_byte_exact(structures, kind):
    doc = to_document(kind, structures[kind])
    text = doc.dumps()
    again = to_document(kind, from_document(parse(text)))
    assert again.dumps() == text


def test_save_and_load(tmp_path, structures):
    p = tmp_path / "c.json"
    doc = to_document("contra2cat", structures["contra2cat"])
    save(p, doc)
    assert load(p).dumps() == doc.dumps()
    assert not list(tmp_path.glob("*.tmp*"))


@pytest.mark.parametrize("text,where", [
    ('{"kind": "nope", "version": 1, "payload": {}}', "kind"),
    ('{"kind": "fincat", "version": 99, "payload": {}}', "version"),
    ('{"kind": "fincat", "version": 1}', ""),
    ("not json", ""),
])
def test_parse_rejects(text, where):
    with pytest.raises(DocumentError) as e:
        parse(text)
    assert where in str(e.value.address) + e.value.detail


def test_generated_catsub_is_stable():
    # frozen digest of the 2,op2 document; any change in ids or ordering shows up here
    kind, A = generate("catsub", cats="2,op2")
    text = to_document(kind, A).dumps()
    assert hashlib.sha256(text.encode()).hexdigest() == GOLDEN_CATSUB


GOLDEN_CATSUB = "89109be1a4e80c8fb94c2ac1f33625dd3315452204a9ccfdf0f98ed71ec0b6eb"
GOLDEN_DIR = Path(__file__).parent / "golden"


def test_golden_file_round_trips(tmp_path, capsys):
    golden = GOLDEN_DIR / "catsub_2_op2.json"
    text = golden.read_text(encoding="utf-8")
    assert load(golden).dumps() == text
    assert to_document("contra2cat", from_document(load(golden))).dumps() == text
    kind, A = generate("catsub", cats="2,op2")
    assert to_document(kind, A).dumps() == text
    assert run(capsys, "validate", golden)[0] == 0


def test_deformed_generator_is_weak():
    kind, W = generate("deformed-weak", cats="2,op2", seed=7)
    assert kind == "weak-involution"
    assert has_nonidentity_constraints(W)
    assert validate_weak_involution(W).ok


def test_generate_then_validate(tmp_path, capsys):
    for name, extra in [("catsub", ["--cats", "1,D2"]), ("chain", ["-n", "4"]), ("trivial", []),
                        ("deformed-weak", ["--cats", "B2", "--seed", "3"])]:
        out = tmp_path / f"{name}.json"
        assert run(capsys, "generate", name, *extra, "-o", out)[0] == 0
        code, stdout, _ = run(capsys, "validate", out)
        assert code == 0
        rep = json.loads(stdout)
        assert rep["kind"] == "report" and rep["payload"]["ok"]


def test_unknown_generator_and_kind(tmp_path, capsys):
    assert run(capsys, "generate", "nothing")[0] == 2
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "mystery", "version": 1, "payload": {}}\n')
    assert run(capsys, "validate", bad)[0] == 2


def test_non_composable_entry_is_structural(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "generate", "chain", "-o", path)
    doc = json.loads(path.read_text())
    rows = doc["payload"]["compose"]
    rows[0][-1] = "no-such-arrow"
    path.write_text(json.dumps(doc))
    code, stdout, _ = run(capsys, "validate", path)
    assert code == 2


@pytest.mark.parametrize("kind", KINDS[:3] + ["weak-involution", "duality-pseudofunctor", "certificate", "vbicat"])
def test_every_candidate_mutant_is_killed(structures, tmp_path, capsys, kind):
    obj = structures[kind]
    cands = candidates(kind, obj)
    assert cands
    for m in cands[:: max(1, len(cands) // 12)]:
        path = tmp_path / "m.json"
        save(path, to_document(kind, m.apply()))
        code, _, _ = run(capsys, "validate", path)
        assert code in (1, 2), (m.operator, m.address)


@settings(max_examples=10)
@given(st.integers(0, 10 ** 6))
def test_seeded_mutation_of_weak_involution_is_killed(seed):
    from dualinv.cli.main import validate_structure
    W = weak("B2", 1)
    mutant, m = mutate("weak-involution", W, seed)
    assert not validate_structure("weak-involution", mutant, 1).ok


def test_mutate_command(tmp_path, capsys):
    src, dst = tmp_path / "w.json", tmp_path / "m.json"
    run(capsys, "generate", "deformed-weak", "--cats", "B2", "--seed", "1", "-o", src)
    code, _, err = run(capsys, "mutate", src, "--seed", "5", "-o", dst)
    assert code == 0 and err
    assert run(capsys, "validate", dst)[0] in (1, 2)


def test_budget_exit_code_and_env_fallback(tmp_path, capsys, monkeypatch):
    path = tmp_path / "c.json"
    run(capsys, "generate", "catsub", "--cats", "2,op2", "-o", path)
    assert run(capsys, "validate", path, "--budget-cells", 3)[0] == 3
    monkeypatch.setenv("VARCAT_BUDGET_CELLS", "3")
    assert run(capsys, "validate", path)[0] == 3
    monkeypatch.setenv("VARCAT_BUDGET_CELLS", "100000")
    assert run(capsys, "validate", path)[0] == 0


def test_strictify_trivial_marks_already_strict(tmp_path, capsys):
    src = tmp_path / "t.json"
    run(capsys, "generate", "trivial", "-o", src)
    code, out, _ = run(capsys, "strictify", src, "--out-dir", tmp_path)
    assert code == 0
    strict = load(tmp_path / "t.strict.json")
    assert ALREADY_STRICT in strict.payload["name"]
    for suffix in ("strict", "duality", "certificate"):
        assert run(capsys, "validate", tmp_path / f"t.{suffix}.json")[0] == 0


def test_strictify_both_paths(tmp_path, capsys):
    src = tmp_path / "w.json"
    run(capsys, "generate", "deformed-weak", "--cats", "B2", "--seed", "1", "-o", src)
    code, out, _ = run(capsys, "strictify", src, "--path", "both", "--out-dir", tmp_path)
    assert code == 0
    for path in ("onestep", "stepwise"):
        for suffix in ("strict", "duality", "certificate"):
            f = tmp_path / f"w.{path}.{suffix}.json"
            assert run(capsys, "validate", f)[0] == 0
    assert ALREADY_STRICT not in load(tmp_path / "w.onestep.strict.json").payload["name"]


def test_strictify_rejects_invalid_input_without_outputs(tmp_path, capsys):
    src, bad = tmp_path / "w.json", tmp_path / "bad.json"
    run(capsys, "generate", "deformed-weak", "--cats", "B2", "--seed", "1", "-o", src)
    run(capsys, "mutate", src, "--seed", "2", "-o", bad)
    code, _, _ = run(capsys, "strictify", bad, "--out-dir", tmp_path)
    assert code in (1, 2)
    assert not list(tmp_path.glob("bad.*.json"))


def test_oracle_check(tmp_path, capsys):
    path = tmp_path / "c.json"
    save(path, to_document("vbicat", lift_strict(sample_cat_sub("1"))))
    code, out, _ = run(capsys, "oracle-check", path)
    assert code == 0
    assert json.loads(out)["payload"]["ok"]


def test_threads_do_not_change_reports(tmp_path, capsys):
    path = tmp_path / "c.json"
    run(capsys, "generate", "catsub", "--cats", "2,op2", "-o", path)
    one = run(capsys, "validate", path, "--threads", 1)[1]
    two = run(capsys, "validate", path, "--threads", 2)[1]
    assert one == two
