#!/usr/bin/env python3
"""
Demo script for fcnet
Generates a small planted-community recording and walks through the CLI
"""

import os
import shutil
import subprocess

DEMO_DIR = "fcnet_demo"


def run_cmd(cmd):
    """Run a command and print output"""
    print(f"\n$ {cmd}")
    result = subprocess.run(cmd, shell=True, capture_output=True, text=True)
    print(result.stdout)
    if result.stderr:
        print(result.stderr)
    return result


def demo():
    """Run fcnet demo"""

    print("=" * 60)
    print("fcnet Demo")
    print("=" * 60)

    print("\n[1] Cleaning up old output...")
    shutil.rmtree(DEMO_DIR, ignore_errors=True)
    os.makedirs(DEMO_DIR)
    recording = os.path.join(DEMO_DIR, "recording.csv")
    out = os.path.join(DEMO_DIR, "results")

    print("\n[2] Synthetic recording: 16 channels, communities of 9 and 7")
    run_cmd(
        f"python -m fcnet.cli synth --samples 60000 --communities 9,7 --strength 0.9 "
        f"--anticorrelation 0.5 --drive 0.3 --latent-band 150:450 --seed 7 --out {recording}"
    )

    print("\n[3] Analyse 10000-sample windows with all four methods")
    run_cmd(
        f"python -m fcnet.cli analyze --input {recording} --window-size 10000 --kinds both "
        f"--sa-steps 100 --sa-samples 100 --seed 1 --plots --out {out}"
    )

    print("\n[4] Summary of the run")
    run_cmd(f"python -m fcnet.cli summary --out {out}")

    print("\n[5] How large is the bisection search space for 16 channels?")
    run_cmd("python -m fcnet.cli search-space 16")

    print("\n[6] Outputs written:")
    for root, _, files in sorted(os.walk(out)):
        for name in sorted(files):
            print(f"  {os.path.join(root, name)}")

    print("\n" + "=" * 60)
    print("Demo complete!")
    print("=" * 60 + "\n")


if __name__ == "__main__":
    demo()
