#!/usr/bin/env python3
"""Drives the CLI binary end to end on a tiny corpus triple: pipeline run,
stage-by-stage rerun (ingest/lexicon/score/assemble/stats/eval), determinism
of two pipeline runs, and the exit-code contract."""

import json
import subprocess
import sys
import tempfile
from pathlib import Path

CLI = Path(sys.argv[1])

COMPOSITION = ["composition", "lines", "perspective", "framing", "balance", "crop"]
LIGHT = ["light", "exposure", "shadows", "contrast", "bright", "glow"]
COLOR = ["color", "blue", "red", "tones", "vibrant", "warm"]
SUBJECT = ["subject", "interesting", "beautiful", "capture", "moment", "story"]
GENERIC = [
    "a man is riding a bicycle down the road",
    "a plate of pasta sits on the counter",
    "a bus is parked near the station",
    "a child is holding an umbrella outside",
]


def sentence(words, i):
    a, b, c = words[i % len(words)], words[(i + 1) % len(words)], words[(i + 2) % len(words)]
    return f"the {a} and {b} with {c} really works here"


def write_corpora(root: Path):
    fa = root / "fa.jsonl"
    weak = root / "weak.jsonl"
    neg = root / "neg.jsonl"
    hints = {
        "color_lighting": LIGHT + COLOR,
        "composition": COMPOSITION,
        "depth_of_field": ["field", "depth", "bokeh", "blur", "shallow"],
        "focus": ["focus", "sharp", "crisp", "soft"],
        "general_impression": ["good", "great", "nice"],
        "subject_of_photo": SUBJECT,
        "use_of_camera": ["shutter", "speed", "iso", "aperture"],
    }
    with fa.open("w") as f:
        for img in range(12):
            for hint, words in hints.items():
                for j in range(2):
                    rec = {
                        "comment_id": f"fa-{img}-{hint}-{j}",
                        "image_id": f"p{img:03d}",
                        "attribute_hint": hint,
                        "text": sentence(words, img + j),
                    }
                    f.write(json.dumps(rec) + "\n")
    pools = [COMPOSITION, LIGHT, COLOR, SUBJECT]
    with weak.open("w") as f:
        for img in range(10):
            words = pools[img % len(pools)]
            for j in range(5):
                f.write(json.dumps({"image_id": f"w{img:03d}",
                                    "text": sentence(words, img + j)}) + "\n")
            f.write(json.dumps({"image_id": f"w{img:03d}",
                                "text": GENERIC[img % len(GENERIC)]}) + "\n")
    with neg.open("w") as f:
        for i in range(200):
            f.write(json.dumps({"image_id": f"coco-{i // 5}",
                                "text": GENERIC[i % len(GENERIC)]}) + "\n")
    return fa, weak, neg


def run(*args, expect=0):
    proc = subprocess.run([str(CLI), *map(str, args)], capture_output=True, text=True)
    if proc.returncode != expect:
        print(f"command {args} exited {proc.returncode}, expected {expect}")
        print(proc.stdout)
        print(proc.stderr)
        sys.exit(1)
    return proc


def main():
    with tempfile.TemporaryDirectory(prefix="aescap-cli-") as tmp:
        root = Path(tmp)
        fa, weak, neg = write_corpora(root)

        out1 = root / "run1"
        out2 = root / "run2"
        pipeline_args = [
            "pipeline", "--fa", fa, "--weak", weak, "--neg", neg,
            "--k", "40", "--top-fraction", "0.8", "--seed", "7",
        ]
        run(*pipeline_args, "--out-dir", out1)
        run(*pipeline_args, "--out-dir", out2, "--workers", "4")
        for name in ["lexicon.csv", "scored.jsonl", "dataset.jsonl", "stats.json",
                     "manifest.json"]:
            b1 = (out1 / name).read_bytes()
            b2 = (out2 / name).read_bytes()
            if b1 != b2:
                print(f"{name} differs between runs")
                sys.exit(1)

        # a TOML config file must be equivalent to flags
        out3 = root / "run3"
        config = root / "pipeline.toml"
        config.write_text(
            "[pipeline]\n"
            f'fa = "{fa}"\nweak = "{weak}"\nneg = "{neg}"\n'
            f'out-dir = "{out3}"\nk = 40\ntop-fraction = 0.8\nseed = 7\n'
        )
        run("pipeline", "--config", config)
        if (out3 / "dataset.jsonl").read_bytes() != (out1 / "dataset.jsonl").read_bytes():
            print("config-file run differs from flag run")
            sys.exit(1)

        # stage-by-stage over the same inputs
        stage = root / "stage"
        stage.mkdir()
        run("ingest", "--corpus", weak, "--source", "weakly_annotated",
            "--out", stage / "weak.jsonl", "--manifest", stage / "weak_manifest.json")
        run("lexicon", "--in", fa, "--k", "40", "--out", stage / "lexicon.csv")
        run("score", "--lexicon", stage / "lexicon.csv", "--in", stage / "weak.jsonl",
            "--classifier", out1 / "classifier.json", "--top-fraction", "0.8",
            "--out", stage / "scored.jsonl")
        run("assemble", "--scored", stage / "scored.jsonl", "--lexicon", stage / "lexicon.csv",
            "--out", stage / "dataset.jsonl", "--stats", stage / "stats.json",
            "--drops", stage / "drops.json")
        if (stage / "dataset.jsonl").read_bytes() != (out1 / "dataset.jsonl").read_bytes():
            print("stage-by-stage dataset differs from the pipeline dataset")
            sys.exit(1)
        run("stats", "--dataset", stage / "dataset.jsonl", "--lexicon", stage / "lexicon.csv",
            "--out", stage / "stats2.json")

        # eval: perfect predictions of the ground truth score BLEU 100
        preds = root / "preds.jsonl"
        with preds.open("w") as f:
            for line in (out1 / "dataset.jsonl").read_text().splitlines():
                rec = json.loads(line)
                f.write(json.dumps({"image_id": rec["image_id"],
                                    "attribute": rec["attribute"],
                                    "caption": rec["ground_truth"]}) + "\n")
        proc = run("eval", "--dataset", out1 / "dataset.jsonl", "--pred", preds,
                   "--smoothing", "add_one", "--out", root / "report.json")
        report = json.loads((root / "report.json").read_text())
        assert report["overall"]["bleu4"] == 1.0, report
        assert report["overall"]["spice"] == 1.0, report
        assert "overall" in proc.stdout

        run("loss-check", "--seed", "5", "--n", "6", "--m", "4", "--dims", "3",
            "--batches", "5")

        # exit-code contract: usage error 1, data error 2
        run("score", "--nonsense-flag", expect=1)
        run("score", "--lexicon", root / "missing.csv", "--in", weak,
            "--classifier", out1 / "classifier.json", "--out", stage / "x.jsonl", expect=2)
        run("pipeline", "--fa", fa, "--weak", root / "missing.jsonl", "--neg", neg,
            "--out-dir", root / "runx", expect=2)

    print("cli pipeline smoke ok")


if __name__ == "__main__":
    main()
