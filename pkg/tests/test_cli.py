import pytest

from amda.cli import main


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


class TestPipeline:
    def test_pipeline_emits_everything(self, tmp_path, capsys, atm_dir, java_profile_path):
        out = tmp_path / "out"
        code, _, err = run_cli(capsys, "pipeline", str(atm_dir),
                               "--profile", str(java_profile_path), "-o", str(out))
        assert code == 0, err
        assert (out / "atm.pim.xml").exists()
        assert (out / "atm.dispatch.xml").exists()
        assert (out / "pim_phsa.dtd").exists()
        assert (out / "atm.java.psm.xml").exists()
        assert (out / "gen" / "java" / "PhsaA1.java").exists()

    def test_pipeline_equals_stage_composition(self, tmp_path, capsys,
                                               atm_dir, java_profile_path):
        whole = tmp_path / "whole"
        staged = tmp_path / "staged"
        assert run_cli(capsys, "pipeline", str(atm_dir), "--profile",
                       str(java_profile_path), "-o", str(whole))[0] == 0
        assert run_cli(capsys, "frontend", str(atm_dir), "-o", str(staged))[0] == 0
        assert run_cli(capsys, "transform", str(staged / "atm.pim.xml"),
                       "--profile", str(java_profile_path), "-o", str(staged))[0] == 0
        assert run_cli(capsys, "codegen", str(staged / "atm.java.psm.xml"),
                       "--dispatcher", str(staged / "atm.dispatch.xml"),
                       "-o", str(staged))[0] == 0
        whole_files = sorted(p.relative_to(whole) for p in whole.rglob("*") if p.is_file())
        staged_files = sorted(p.relative_to(staged) for p in staged.rglob("*") if p.is_file())
        assert whole_files == staged_files
        for rel in whole_files:
            assert (whole / rel).read_bytes() == (staged / rel).read_bytes(), rel

    def test_rerun_is_idempotent(self, tmp_path, capsys, atm_dir, java_profile_path):
        out = tmp_path / "out"
        run_cli(capsys, "pipeline", str(atm_dir), "--profile",
                str(java_profile_path), "-o", str(out))
        first = {p: p.read_bytes() for p in out.rglob("*") if p.is_file()}
        run_cli(capsys, "pipeline", str(atm_dir), "--profile",
                str(java_profile_path), "-o", str(out))
        second = {p: p.read_bytes() for p in out.rglob("*") if p.is_file()}
        assert first == second


class TestValidate:
    def test_validate_pim(self, tmp_path, capsys, atm_dir, java_profile_path):
        out = tmp_path / "out"
        run_cli(capsys, "frontend", str(atm_dir), "-o", str(out))
        code, stdout, _ = run_cli(capsys, "validate", str(out / "atm.pim.xml"))
        assert code == 0
        assert "ok" in stdout

    def test_validate_statechart(self, capsys, atm_dir):
        code, _, _ = run_cli(capsys, "validate", str(atm_dir / "atm.statechart.xml"))
        assert code == 0

    def test_validate_bad_artifact(self, tmp_path, capsys):
        bad = tmp_path / "bad.pim.xml"
        bad.write_text("""<?xml version="1.0"?><pim><phsa phsa_id="A"><automat>
            <states/><events/><transitions/></automat></phsa></pim>""")
        code, _, err = run_cli(capsys, "validate", str(bad))
        assert code == 1
        assert "dtd-violation" in err

    def test_usage_error_is_2(self, capsys):
        with pytest.raises(SystemExit) as info:
            main(["frontend"])  # missing required -o
        assert info.value.code == 2


class TestSimulateCommand:
    def test_script_replay_prints_final_snapshot(self, tmp_path, capsys,
                                                 atm_dir, java_profile_path):
        out = tmp_path / "out"
        run_cli(capsys, "frontend", str(atm_dir), "-o", str(out))
        code, stdout, err = run_cli(
            capsys, "simulate", str(out / "atm.pim.xml"),
            "--script", str(atm_dir / "wrong-pin-x3.events"),
            "--stubs", str(atm_dir / "wrong-pin.stubs.xml"))
        assert code == 0, err
        assert "errors=3" in stdout
        assert "atm: End" in stdout
        assert "\ttransition\tA1_S0 -> A1_S1" in stdout

    def test_trace_written_and_stable(self, tmp_path, capsys, atm_dir):
        out = tmp_path / "out"
        run_cli(capsys, "frontend", str(atm_dir), "-o", str(out))
        args = ("simulate", str(out / "atm.pim.xml"),
                "--script", str(atm_dir / "correct-pin.events"),
                "--stubs", str(atm_dir / "correct-pin.stubs.xml"),
                "-o", str(out))
        assert run_cli(capsys, *args)[0] == 0
        first = (out / "atm.trace.txt").read_bytes()
        assert run_cli(capsys, *args)[0] == 0
        assert (out / "atm.trace.txt").read_bytes() == first

    def test_max_steps_env(self, tmp_path, capsys, atm_dir, monkeypatch):
        out = tmp_path / "out"
        run_cli(capsys, "frontend", str(atm_dir), "-o", str(out))
        monkeypatch.setenv("AMDA_MAX_STEPS", "1")
        code, _, err = run_cli(
            capsys, "simulate", str(out / "atm.pim.xml"),
            "--script", str(atm_dir / "correct-pin.events"),
            "--stubs", str(atm_dir / "correct-pin.stubs.xml"))
        assert code == 1
        assert "step-budget-exceeded" in err

    def test_missing_stub_reported(self, tmp_path, capsys, atm_dir):
        out = tmp_path / "out"
        run_cli(capsys, "frontend", str(atm_dir), "-o", str(out))
        code, _, err = run_cli(capsys, "simulate", str(out / "atm.pim.xml"),
                               "--script", str(atm_dir / "correct-pin.events"))
        assert code == 1
        assert "missing-stub" in err


COMPOSITE_CHART = """<?xml version="1.0" encoding="UTF-8" standalone="no"?>
<statechart name="Job">
  <events>
    <event id="start" description="begin the job"/>
  </events>
  <states>
    <state name="S0" initial="true"/>
    <state name="Ready"/>
    <state name="Work">
      <statechart name="Steps">
        <states>
          <state name="S0" initial="true"/>
          <state name="Step1">
            <entry><inline>done := done + 1</inline></entry>
          </state>
          <state name="End" final="true"/>
        </states>
        <transitions>
          <transition from="S0" to="Step1"/>
          <transition from="Step1" to="End"/>
        </transitions>
        <variables><variable name="done" type="integer" init="0"/></variables>
      </statechart>
    </state>
    <state name="End" final="true"/>
  </states>
  <transitions>
    <transition from="S0" to="Ready"/>
    <transition from="Ready" to="Work" event="start"/>
  </transitions>
</statechart>
"""


class TestCompositePipeline:
    def test_composite_chart_through_cli(self, tmp_path, capsys, java_profile_path):
        chart = tmp_path / "job.statechart.xml"
        chart.write_text(COMPOSITE_CHART)
        script = tmp_path / "run.events"
        script.write_text("job start\n")
        out = tmp_path / "out"

        code, _, err = run_cli(capsys, "pipeline", str(chart), "--name", "job",
                               "--profile", str(java_profile_path), "-o", str(out))
        assert code == 0, err
        pim_text = (out / "job.pim.xml").read_text()
        assert 'phsa_id="Steps"' in pim_text
        assert "act_activate" in pim_text
        assert 'kind="dummy"' in pim_text

        code, stdout, err = run_cli(capsys, "simulate", str(out / "job.pim.xml"),
                                    "--script", str(script))
        assert code == 0, err
        assert "activate job.Steps" in stdout
        assert "job.Steps: End" in stdout          # the sub-automaton finished
        assert "done=1" in stdout                  # its entry action ran
        assert "DummyState_0_Job_Work" in stdout   # parent returned to the dummy state


XMI_CHART = """<xmi:XMI xmlns:xmi="http://www.omg.org/XMI" xmlns:uml="http://www.omg.org/UML">
  <uml:Model name="demo">
    <packagedElement xmi:type="uml:StateMachine" name="Gate">
      <region name="main">
        <subvertex xmi:type="uml:Pseudostate" kind="initial" xmi:id="v0"/>
        <subvertex xmi:type="uml:State" xmi:id="v1" name="Open"/>
        <subvertex xmi:type="uml:FinalState" xmi:id="v2"/>
        <transition source="v0" target="v1"/>
        <transition source="v1" target="v2"><trigger name="close"/></transition>
      </region>
    </packagedElement>
  </uml:Model>
</xmi:XMI>
"""


class TestXmiThroughCli:
    def test_frontend_sniffs_and_accepts_xmi(self, tmp_path, capsys):
        chart = tmp_path / "gate.statechart.xml"
        chart.write_text(XMI_CHART)
        out = tmp_path / "out"
        code, _, err = run_cli(capsys, "frontend", str(chart), "--name", "gate",
                               "-o", str(out))
        assert code == 0, err
        assert 'phsa_id="Gate"' in (out / "gate.pim.xml").read_text()

    def test_validate_xmi(self, tmp_path, capsys):
        chart = tmp_path / "gate.xmi"
        chart.write_text(XMI_CHART)
        code, stdout, _ = run_cli(capsys, "validate", str(chart))
        assert code == 0
        assert "ok" in stdout
