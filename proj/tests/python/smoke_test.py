"""End-to-end smoke of the python module and the command-line tool.

Usage: smoke_test.py <cli-binary> <repo-root>
Needs the extension module on PYTHONPATH (build/python when run from ctest).
"""

import csv
import os
import subprocess
import sys
import tempfile

import numpy as np

import tgpo

CLI = sys.argv[1] if len(sys.argv) > 1 else None
ROOT = sys.argv[2] if len(sys.argv) > 2 else "."

SCENE_TEXT = """{
  "name": "smoke",
  "env": {"dynamics": "linear", "dt": 0.2, "horizon": 12,
          "init_box": {"lower": [-4.2, -4.2], "upper": [-3.8, -3.8]}},
  "regions": [
    {"label": "A", "shape": "circle", "center": [1.0, 1.0], "radius": 0.8},
    {"label": "B", "shape": "circle", "center": [-1.0, 0.5], "radius": 0.5}
  ],
  "stl": "F[2,10](A) & G[0,12](!B)"
}"""


def check(name, cond):
    if not cond:
        raise SystemExit(f"FAIL {name}")
    print(f"ok {name}")


def test_parse_format():
    f = tgpo.parse("F[0,10](A) & G[2,6](!B)")
    check("parse round trip", tgpo.format(f) == "F[0,10](A) & G[2,6](!B)")
    check("str(formula)", str(f) == "F[0,10](A) & G[2,6](!B)")
    try:
        tgpo.parse("F[0,10](")
        raise SystemExit("FAIL parse error not raised")
    except tgpo.TgpoError:
        print("ok parse error raised")


def test_monitor():
    scene = tgpo.Scene.from_json_text(SCENE_TEXT, "smoke")
    f = tgpo.parse("F[0,2](A)")
    # three states walking into A; nearest approach is the center
    states = np.array([[0.0, 0.0], [0.5, 0.5], [1.0, 1.0]])
    rho = tgpo.robustness(states, f, scene)
    check("monitor value", abs(rho - 0.8) < 1e-12)
    check("satisfies", tgpo.satisfies(states, f, scene))
    check("satisfies negative", not tgpo.satisfies(states, tgpo.parse("G[0,2](A)"), scene))


def test_decompose_ground():
    ts = tgpo.decompose(tgpo.parse("F[5,20](mu1 & G[2,6](mu2) & F[3,10](mu3)) & G[0,90](!mu0)"))
    check("subgoal count", len(ts.subgoals) == 3)
    check("constraint count", len(ts.constraints) == 1)
    check("variables", ts.variables == [(5, 20), (3, 10)])
    kinds = [g["kind"] for g in ts.subgoals]
    check("kinds", kinds == ["reach", "stay", "reach"])
    check("stay window", (ts.subgoals[1]["start"], ts.subgoals[1]["end"]) == ("t0+2", "t0+6"))
    plan = tgpo.ground(ts, [10, 5], 100)
    windows = [(w["start"], w["end"]) for w in plan["subgoals"]]
    check("grounded windows", windows == [(10, 10), (12, 16), (15, 15)])
    check("grounded constraint", (plan["constraints"][0]["start"], plan["constraints"][0]["end"]) == (0, 90))
    a = tgpo.sample_assignment(ts, 100, seed=3)
    check("sampled assignment in domain", 5 <= a[0] <= 20 and 3 <= a[1] <= 10)


def test_scene_step():
    scene = tgpo.Scene.from_json_text(SCENE_TEXT, "smoke")
    check("scene fields", scene.horizon == 12 and scene.state_dim == 2)
    check("regions dict", scene.regions["A"]["radius"] == 0.8)
    x0 = scene.sample_init(seed=7)
    check("init in box", np.all(x0 >= -4.2) and np.all(x0 <= -3.8))
    x1 = scene.step(x0, np.array([1.0, 0.0]))
    check("step moves x", abs(x1[0] - x0[0] - 0.2) < 1e-12 and abs(x1[1] - x0[1]) < 1e-12)


def test_train_evaluate(tmp):
    scene_path = os.path.join(tmp, "smoke.json")
    with open(scene_path, "w") as fh:
        fh.write(SCENE_TEXT)
    out = os.path.join(tmp, "run")
    res = tgpo.train(scene=scene_path, profile="desk", seed=0, epochs=2, n_envs=8,
                     hidden=[16, 16], out=out, single_thread=True)
    check("train artifacts", os.path.exists(res["checkpoint"]) and os.path.exists(res["metrics"]))
    with open(res["metrics"]) as fh:
        rows = list(csv.reader(fh))
    check("metrics rows", rows[0][0] == "epoch" and len(rows) == 3)
    rep = tgpo.evaluate(res["checkpoint"], scene_path, n_init=4, n_candidates=8, seed=1)
    check("evaluate report", len(rep["robustness"]) == 4 and 0.0 <= rep["success_rate"] <= 1.0)
    check("chosen assignments", all(len(c) == 1 for c in rep["chosen"]))


def test_cli(tmp):
    scene = os.path.join(ROOT, "tasks", "linear_stl06.json")
    env = dict(os.environ)

    r = subprocess.run([CLI, "decompose", "--scene", scene], capture_output=True, text=True, env=env)
    check("cli decompose", r.returncode == 0 and "reach" in r.stdout and "t0" in r.stdout)

    traj = os.path.join(tmp, "traj.csv")
    with open(traj, "w") as fh:
        fh.write("x0,x1\n")
        for t in range(101):
            fh.write(f"{-4.0 + 0.0724 * t},{-4.0 + 0.0724 * t}\n")
    r = subprocess.run([CLI, "monitor", "--scene", scene, "--trajectory", traj],
                       capture_output=True, text=True, env=env)
    check("cli monitor", r.returncode == 0 and "robustness" in r.stdout)

    # TGPO_OUT_DIR supplies the default artifact root; --out would override it
    outdir = os.path.join(tmp, "envout")
    env["TGPO_OUT_DIR"] = outdir
    r = subprocess.run([CLI, "train", "--scene", scene, "--profile", "desk", "--epochs", "1",
                        "--n-envs", "8", "--seed", "3"], capture_output=True, text=True, env=env)
    check("cli train via TGPO_OUT_DIR",
          r.returncode == 0 and os.path.exists(os.path.join(outdir, "checkpoint.bin")))

    r = subprocess.run([CLI, "eval", "--scene", scene, "--n-init", "2", "--n-candidates", "8",
                        "--checkpoint", os.path.join(outdir, "checkpoint.bin")],
                       capture_output=True, text=True, env=env)
    check("cli eval", r.returncode == 0 and "success rate" in r.stdout)


def main():
    test_parse_format()
    test_monitor()
    test_decompose_ground()
    test_scene_step()
    with tempfile.TemporaryDirectory() as tmp:
        test_train_evaluate(tmp)
        if CLI:
            test_cli(tmp)
    print("smoke test passed")


if __name__ == "__main__":
    main()
