#!/usr/bin/env python3
"""
Validation script for fcnet
Full-size end-to-end checks through the CLI: planted-community recovery,
coherency and anticorrelation bounds, window-size contrast, determinism
across worker counts, search-space sizes and exit codes
"""

import csv
import filecmp
import json
import os
import shutil
import statistics
import subprocess
import sys
import time

# Colors for terminal output
GREEN = '\033[92m'
RED = '\033[91m'
YELLOW = '\033[93m'
BLUE = '\033[94m'
RESET = '\033[0m'

WORK_DIR = "fcnet_validate"
RECORDING = os.path.join(WORK_DIR, "planted.f32")
PLANTED = [1] * 9 + [2] * 7
# reduced cooling schedule keeps the full run within a few minutes
FAST_SA = "--sa-steps 100 --sa-samples 100"
CLI = f"{sys.executable} -m fcnet.cli"


def print_test(message):
    print(f"\n{BLUE}[TEST]{RESET} {message}")


def print_success(message):
    print(f"{GREEN}[OK]{RESET} {message}")


def print_error(message):
    print(f"{RED}[X]{RESET} {message}")


def print_info(message):
    print(f"{YELLOW}[i]{RESET} {message}")


def run_command(cmd, check=True):
    """Run a command and return output"""
    print_info(f"Running: {cmd}")
    result = subprocess.run(cmd, shell=True, capture_output=True, text=True)
    if check and result.returncode != 0:
        print_error(f"Command failed ({result.returncode}): {result.stderr}")
        return None
    return result


def read_columns(path):
    with open(path, newline="") as f:
        rows = list(csv.DictReader(f))
    return {key: [row[key] for row in rows] for key in rows[0]}


def analyze(window_size, out, kinds="both", workers=4):
    return run_command(
        f"{CLI} analyze --input {RECORDING} --format raw-f32 --channels 16 --window-size {window_size} "
        f"--kinds {kinds} --methods A,B,C,D --seed 11 {FAST_SA} --workers {workers} --out {out}"
    )


def cleanup():
    """Clean up validation data"""
    if os.path.exists(WORK_DIR):
        shutil.rmtree(WORK_DIR)
        print_info(f"Removed {WORK_DIR}")


def test_1_synthesize():
    """Test 1: Full-size synthetic recording"""
    print_test("Test 1: 16 channels, 10^6 samples, planted 9/7 split")
    os.makedirs(WORK_DIR, exist_ok=True)
    result = run_command(
        f"{CLI} synth --samples 1000000 --communities 9,7 --strength 0.9 --noise 0.3 "
        f"--anticorrelation 0.5 --drive 0.3 --latent-band 150:450 --seed 2024 "
        f"--format raw-f32 --out {RECORDING}"
    )
    if not result:
        return False
    print_success("Recording written")
    return True


def test_2_correlation_recovery():
    """Test 2: Correlation windows recover the planted split with high q_s"""
    print_test("Test 2: correlation q_s > 0.7 and planted clustering on >= 90% of windows")
    out = os.path.join(WORK_DIR, "ws10000")
    if not analyze(10000, out):
        return False

    trace = read_columns(os.path.join(out, "modularity_correlation.csv"))
    windows = len(trace["window"])
    ok = True
    for method in "ABCD":
        high = sum(float(q) > 0.7 for q in trace[method])
        clusters = read_columns(os.path.join(out, f"clusters_correlation_{method}.csv"))
        planted = sum(
            [int(c) for c in clusters[f"w{w}"]] == PLANTED for w in trace["window"]
        )
        if high < 0.9 * windows or planted < 0.9 * windows:
            print_error(f"Method {method}: q_s > 0.7 on {high}/{windows}, planted split on {planted}/{windows}")
            ok = False
        else:
            print_success(f"Method {method}: q_s > 0.7 on {high}/{windows}, planted split on {planted}/{windows}")
    return ok


def test_3_coherency_and_anticorrelation():
    """Test 3: Coherency q_s stays low; anticorrelation stays below 0.35"""
    print_test("Test 3: coherency method D q_s < 0.2; weighted anticorrelation < 0.35")
    out = os.path.join(WORK_DIR, "ws10000")
    coherency = read_columns(os.path.join(out, "modularity_coherency.csv"))
    low = sum(float(q) < 0.2 for q in coherency["D"])
    windows = len(coherency["D"])
    anticorrelation = [float(a) for a in read_columns(os.path.join(out, "anticorrelation.csv"))["weighted"]]
    ok = True
    if low < 0.9 * windows:
        print_error(f"coherency q_s < 0.2 on only {low}/{windows} windows")
        ok = False
    else:
        print_success(f"coherency q_s < 0.2 on {low}/{windows} windows")
    if max(anticorrelation) >= 0.35:
        print_error(f"weighted anticorrelation reaches {max(anticorrelation):.3f}")
        ok = False
    else:
        print_success(f"weighted anticorrelation at most {max(anticorrelation):.3f}")
    return ok


def test_4_window_contrast():
    """Test 4: Shorter windows give a more variable q_s"""
    print_test("Test 4: per-window q_s variance at 10000 exceeds that at 100000")
    out = os.path.join(WORK_DIR, "ws100000")
    if not analyze(100000, out, kinds="correlation"):
        return False
    short = read_columns(os.path.join(WORK_DIR, "ws10000", "modularity_correlation.csv"))
    long = read_columns(os.path.join(out, "modularity_correlation.csv"))
    ok = True
    for method in "ABCD":
        v_short = statistics.pvariance([float(q) for q in short[method]])
        v_long = statistics.pvariance([float(q) for q in long[method]])
        if v_short > v_long:
            print_success(f"Method {method}: variance {v_short:.3g} > {v_long:.3g}")
        else:
            print_error(f"Method {method}: variance {v_short:.3g} <= {v_long:.3g}")
            ok = False
    return ok


def test_5_determinism():
    """Test 5: Byte-identical outputs across worker counts"""
    print_test("Test 5: one worker reproduces the four-worker run byte for byte")
    out = os.path.join(WORK_DIR, "ws10000_serial")
    if not analyze(10000, out, workers=1):
        return False
    reference = os.path.join(WORK_DIR, "ws10000")
    with open(os.path.join(reference, "manifest.json")) as f:
        files = json.load(f)["files"] + ["manifest.json"]
    _, mismatch, errors = filecmp.cmpfiles(reference, out, files, shallow=False)
    if mismatch or errors:
        print_error(f"differing files: {mismatch + errors}")
        return False
    print_success(f"{len(files)} files identical")
    return True


def test_6_search_space():
    """Test 6: Search-space sizes for 16 channels"""
    print_test("Test 6: search-space 16")
    result = run_command(f"{CLI} search-space 16")
    if not result:
        return False
    expected = ["32902", "65519", "10480142147"]
    missing = [value for value in expected if value not in result.stdout]
    if missing:
        print_error(f"missing values {missing}")
        return False
    print_success("32902 / 65519 / 10480142147")
    return True


def test_7_exit_codes():
    """Test 7: Config and data errors exit with their codes"""
    print_test("Test 7: exit codes")
    checks = [
        (f'{CLI} analyze --input {RECORDING} --format raw-f32 --channels 16 --methods ""', 2),
        (f"{CLI} analyze --input {os.path.join(WORK_DIR, 'missing.csv')}", 3),
    ]
    ok = True
    for cmd, code in checks:
        result = run_command(cmd, check=False)
        if result.returncode != code:
            print_error(f"expected exit {code}, got {result.returncode}")
            ok = False
        else:
            print_success(f"exit {code}")
    return ok


def main():
    """Run all validation tests"""
    print(f"\n{BLUE}{'='*60}{RESET}")
    print(f"{BLUE}fcnet Validation Script{RESET}")
    print(f"{BLUE}{'='*60}{RESET}\n")

    cleanup()
    started = time.time()

    tests = [
        test_1_synthesize,
        test_2_correlation_recovery,
        test_3_coherency_and_anticorrelation,
        test_4_window_contrast,
        test_5_determinism,
        test_6_search_space,
        test_7_exit_codes,
    ]

    passed = 0
    failed = 0

    for test in tests:
        try:
            if test():
                passed += 1
            else:
                failed += 1
                print_error(f"{test.__name__} failed")
        except Exception as e:
            failed += 1
            print_error(f"{test.__name__} failed with exception: {e}")

    print(f"\n{BLUE}{'='*60}{RESET}")
    print(f"\n{GREEN}Passed:{RESET} {passed}/{len(tests)}")
    if failed > 0:
        print(f"{RED}Failed:{RESET} {failed}/{len(tests)}")
    print(f"Elapsed: {time.time() - started:.1f}s\n")

    return 0 if failed == 0 else 1


if __name__ == "__main__":
    sys.exit(main())
