"""Command line surface: corpus generation, runs, scoring, exit codes."""

import json
import sys
import textwrap

import pytest

from triarena.cli import main
from triarena.sokoban.textio import save_corpus
from triarena.webaes.snapshots import dump_page_snapshot

from web_fixtures import landing_page, panel_page, tweak_element


@pytest.fixture()
def small_corpus(tmp_path, sokoban_corpus):
    directory = tmp_path / "corpus"
    save_corpus(sokoban_corpus[:2], directory)
    return directory


def run_cli(*argv):
    return main(list(argv))


def test_generate_football_corpus(tmp_path, capsys):
    out = tmp_path / "scenarios"
    assert run_cli("generate", "--env", "football", "--out", str(out)) == 0
    assert "wrote 108 football scenarios" in capsys.readouterr().out
    assert (out / "manifest.json").exists()
    assert len(list(out.glob("*.json"))) >= 108


def test_run_idle_sokoban_writes_run_directory(tmp_path, capsys, small_corpus):
    out = tmp_path / "run"
    code = run_cli(
        "run", "--env", "sokoban", "--agent", "idle", "--mode", "online",
        "--corpus", str(small_corpus), "--out", str(out),
        "--repeats", "2", "--max-steps", "3", "--workers", "1",
    )
    assert code == 0
    stdout = capsys.readouterr().out
    assert "environment: sokoban  mode: Online" in stdout
    assert "score:" in stdout

    config = json.loads((out / "config.json").read_text())
    assert config["agent"] == "idle"
    assert config["repeats"] == 2
    assert config["planner"]["max_steps"] == 3
    assert len(config["levels"]) == 2

    episodes = sorted(p.name for p in (out / "episodes").glob("*.json"))
    assert len(episodes) == 4
    assert all(name.endswith(("__r0.json", "__r1.json")) for name in episodes)

    report = json.loads((out / "report.json").read_text())
    assert report["episode_count"] == 4
    assert (out / "report.txt").exists()
    one = json.loads((out / "episodes" / episodes[0]).read_text())
    assert one["mode"] == "Online"
    assert one["decisions"] == 3


def test_run_respects_level_filter_and_limit(tmp_path, capsys, small_corpus, sokoban_corpus):
    wanted = sokoban_corpus[1].level_id
    out = tmp_path / "run"
    code = run_cli(
        "run", "--env", "sokoban", "--agent", "idle", "--corpus", str(small_corpus),
        "--levels", wanted, "--repeats", "1", "--max-steps", "1", "--out", str(out),
    )
    assert code == 0
    capsys.readouterr()
    config = json.loads((out / "config.json").read_text())
    assert config["levels"] == [wanted]


def test_config_file_supplies_defaults(tmp_path, capsys, small_corpus):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({
        "run": {"agent": "idle", "repeats": 1, "corpus": str(small_corpus)},
        "planner": {"max_steps": 2, "action_memory": 7},
    }))
    out = tmp_path / "run"
    code = run_cli("run", "--env", "sokoban", "--config", str(cfg), "--out", str(out))
    assert code == 0
    capsys.readouterr()
    config = json.loads((out / "config.json").read_text())
    assert config["repeats"] == 1
    assert config["planner"]["max_steps"] == 2
    assert config["planner"]["action_memory"] == 7


def test_exit_codes_for_config_errors(tmp_path, capsys, small_corpus):
    base = ["run", "--env", "sokoban", "--corpus", str(small_corpus)]
    assert run_cli(*base, "--mode", "diagonal") == 1
    assert run_cli(*base, "--agent", "telepathy") == 1
    assert run_cli(*base, "--agent", "idle", "--repeats", "0") == 1
    assert run_cli("run", "--env", "football", "--mode", "global", "--agent", "idle") == 1
    bad_cfg = tmp_path / "bad.json"
    bad_cfg.write_text("[1, 2]")
    assert run_cli(*base, "--config", str(bad_cfg)) == 1
    capsys.readouterr()


def test_exit_codes_for_corpus_errors(tmp_path, capsys, small_corpus):
    assert run_cli("run", "--env", "sokoban", "--agent", "idle",
                   "--corpus", str(tmp_path / "absent")) == 3
    assert run_cli("run", "--env", "webui", "--agent", "idle") == 3
    assert run_cli("run", "--env", "sokoban", "--agent", "idle",
                   "--corpus", str(small_corpus), "--levels", "no-such-level") == 3
    empty = tmp_path / "empty-run"
    empty.mkdir()
    assert run_cli("report", str(empty)) == 3
    capsys.readouterr()


def test_wire_agent_failure_preserves_partial_results(tmp_path, capsys, small_corpus):
    flag = tmp_path / "already-ran"
    script = tmp_path / "oneshot.py"
    script.write_text(textwrap.dedent(f"""
        import json, os, sys
        flag = {str(flag)!r}
        if os.path.exists(flag):
            sys.exit(0)
        open(flag, "w").close()
        for line in sys.stdin:
            msg = json.loads(line)
            if msg["type"] == "observe":
                print(json.dumps({{"type": "act", "text": "# action\\nUp"}}), flush=True)
    """).strip() + "\n")
    out = tmp_path / "run"
    code = run_cli(
        "run", "--env", "sokoban", "--corpus", str(small_corpus),
        "--agent", f"stdio:{sys.executable} {script}",
        "--repeats", "1", "--max-steps", "2", "--out", str(out), "--no-images",
    )
    assert code == 2
    assert "agent endpoint failed" in capsys.readouterr().err
    episodes = list((out / "episodes").glob("*.json"))
    assert len(episodes) == 1
    assert (out / "report.json").exists()


def test_report_command_reaggregates(tmp_path, capsys, small_corpus):
    out = tmp_path / "run"
    assert run_cli("run", "--env", "sokoban", "--agent", "idle",
                   "--corpus", str(small_corpus), "--repeats", "1",
                   "--max-steps", "1", "--out", str(out)) == 0
    first = capsys.readouterr().out
    (out / "report.json").unlink()
    (out / "report.txt").unlink()
    assert run_cli("report", str(out)) == 0
    again = capsys.readouterr().out
    assert "environment: sokoban" in again
    assert (out / "report.json").exists()
    score_line = [l for l in first.splitlines() if l.startswith("score:")]
    assert score_line and score_line[0] in again


# --- score-web -------------------------------------------------------------


def write_snapshots(directory, pages):
    directory.mkdir(parents=True, exist_ok=True)
    for page in pages:
        dump_page_snapshot(page, directory / f"{page.action_id}.json")
    return directory


def test_score_web_perfect_run(tmp_path, capsys):
    gt = write_snapshots(tmp_path / "gt", [landing_page(), panel_page()])
    gen = write_snapshots(tmp_path / "gen", [landing_page(), panel_page()])
    out_path = tmp_path / "scores.json"
    code = run_cli("score-web", str(gt), str(gen), "--out", str(out_path))
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["aes"] == pytest.approx(100.0, abs=1e-9)
    assert payload["weights"] == "defaults"
    assert {p["action_id"] for p in payload["pages"]} == {"initial", "open-menu"}
    assert json.loads(out_path.read_text())["aes"] == payload["aes"]


def test_score_web_lenient_on_broken_generated_page(tmp_path, capsys):
    gt = write_snapshots(tmp_path / "gt", [landing_page(), panel_page()])
    gen = write_snapshots(tmp_path / "gen", [panel_page()])
    (tmp_path / "gen" / "initial.json").write_text("{broken")
    code = run_cli("score-web", str(gt), str(gen))
    assert code == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["aes"] == 0.0
    assert payload["buckets"]["Par."] == 100.0


def test_score_web_weights_file(tmp_path, capsys):
    gt = write_snapshots(tmp_path / "gt", [landing_page(), panel_page()])
    altered = tweak_element(landing_page(), 2, attributes={
        "text": "forecast charts for the coming week", "line-height": "60px"})
    gen = write_snapshots(tmp_path / "gen", [altered, panel_page()])
    weights = tmp_path / "weights.json"
    weights.write_text(json.dumps({"alpha": {"line-height": 0.0}, "beta": 0.5}))
    assert run_cli("score-web", str(gt), str(gen), "--weights", str(weights)) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["aes"] == pytest.approx(100.0, abs=1e-9)
    assert payload["weights"] == str(weights)

    assert run_cli("score-web", str(gt), str(gen)) == 0
    default_payload = json.loads(capsys.readouterr().out)
    assert default_payload["aes"] < 100.0


def test_score_web_error_paths(tmp_path, capsys):
    gt = write_snapshots(tmp_path / "gt", [landing_page()])
    gen = write_snapshots(tmp_path / "gen", [landing_page()])
    empty = tmp_path / "none"
    empty.mkdir()
    assert run_cli("score-web", str(empty), str(gen)) == 3
    broken_gt = tmp_path / "broken-gt"
    broken_gt.mkdir()
    (broken_gt / "initial.json").write_text("{broken")
    assert run_cli("score-web", str(broken_gt), str(gen)) == 3
    bad_weights = tmp_path / "w.json"
    bad_weights.write_text("{broken")
    assert run_cli("score-web", str(gt), str(gen), "--weights", str(bad_weights)) == 1
    assert run_cli("score-web", str(tmp_path / "missing"), str(gen)) == 1
    capsys.readouterr()
