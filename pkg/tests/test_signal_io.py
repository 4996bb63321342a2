"""Tests for recording I/O, windowing and the synthetic generator"""

import os
import shutil
import tempfile
import unittest

import numpy as np

from fcnet.errors import ConfigError, DataError
from fcnet.models import MultichannelRecording, RecordingFormat, SyntheticSpec, WindowSpec
from fcnet.signal_io import generate_synthetic, load_recording, save_recording, window_recording


class TestLoadRecording(unittest.TestCase):
    """Test CSV and raw-f32 loading"""

    def setUp(self):
        self.test_dir = tempfile.mkdtemp()

    def tearDown(self):
        shutil.rmtree(self.test_dir)

    def write(self, name, content, mode="w"):
        path = os.path.join(self.test_dir, name)
        with open(path, mode) as f:
            f.write(content)
        return path

    def test_csv_shape(self):
        """4 rows x 3 columns -> 3 channels, 4 samples"""
        path = self.write("rec.csv", "1,2,3\n4,5,6\n7,8,9\n10,11,12\n")
        rec = load_recording(path, "csv")
        self.assertEqual(rec.n_channels, 3)
        self.assertEqual(rec.n_samples, 4)
        self.assertEqual(rec.data.dtype, np.float64)
        self.assertEqual(rec.data[3, 2], 12.0)

    def test_csv_header_skipped(self):
        path = self.write("rec.csv", "a,b\n1,2\n3,4\n")
        rec = load_recording(path, "csv", header=True)
        self.assertEqual(rec.n_samples, 2)

    def test_csv_nan_names_cell(self):
        """NaN is rejected with its row and column"""
        path = self.write("rec.csv", "1,2,3\n4,NaN,6\n")
        with self.assertRaises(DataError) as ctx:
            load_recording(path, "csv")
        self.assertIn("row 2", str(ctx.exception))
        self.assertIn("column 2", str(ctx.exception))

    def test_csv_ragged_rows(self):
        path = self.write("rec.csv", "1,2,3\n4,5\n")
        with self.assertRaises(DataError):
            load_recording(path, "csv")

    def test_missing_file(self):
        with self.assertRaises(DataError):
            load_recording(os.path.join(self.test_dir, "nope.csv"))

    def test_raw_f32_round_trip(self):
        data = np.arange(12, dtype=np.float64).reshape(4, 3) / 8.0
        path = os.path.join(self.test_dir, "rec.f32")
        save_recording(MultichannelRecording(data, 500.0), path, RecordingFormat.RAW_F32)
        rec = load_recording(path, "raw-f32", channels=3, sample_rate=500.0)
        np.testing.assert_array_equal(rec.data, data)
        self.assertEqual(rec.sample_rate, 500.0)

    def test_raw_f32_bad_length(self):
        """Byte length not divisible by 4 * channels"""
        path = self.write("rec.f32", np.zeros(5, dtype="<f4").tobytes(), mode="wb")
        with self.assertRaises(DataError):
            load_recording(path, "raw-f32", channels=2)

    def test_raw_f32_needs_channels(self):
        path = self.write("rec.f32", np.zeros(4, dtype="<f4").tobytes(), mode="wb")
        with self.assertRaises(DataError):
            load_recording(path, "raw-f32")


class TestWindowRecording(unittest.TestCase):
    """Test non-overlapping windows"""

    def recording(self, n_samples):
        return MultichannelRecording(np.zeros((n_samples, 2)), 1000.0)

    def test_exact_division(self):
        windows = window_recording(self.recording(1000000), WindowSpec(100000))
        self.assertEqual(len(windows), 10)

    def test_remainder_dropped(self):
        windows = window_recording(self.recording(9999), WindowSpec(5000))
        self.assertEqual(len(windows), 1)
        self.assertEqual(windows[0].shape, (5000, 2))

    def test_exact_fit(self):
        windows = window_recording(self.recording(5000), WindowSpec(5000))
        self.assertEqual(len(windows), 1)
        self.assertEqual(windows[0].shape[0], 5000)

    def test_concatenation_reconstructs_input(self):
        data = np.random.default_rng(3).standard_normal((1234, 3))
        rec = MultichannelRecording(data, 1000.0)
        windows = window_recording(rec, WindowSpec(300))
        rebuilt = np.vstack(windows + [rec.data[len(windows) * 300:]])
        self.assertEqual(rebuilt.tobytes(), rec.data.tobytes())

    def test_window_longer_than_recording(self):
        with self.assertRaises(DataError):
            window_recording(self.recording(10), WindowSpec(20))

    def test_invalid_window_size(self):
        with self.assertRaises(ConfigError):
            WindowSpec(1)


class TestGenerateSynthetic(unittest.TestCase):
    """Test the planted-community generator"""

    def test_within_community_correlation(self):
        spec = SyntheticSpec.from_sizes(
            [8, 8], n_samples=20000, sample_rate=1000.0, shared_signal_strength=0.9, noise_level=0.2
        )
        corr = np.corrcoef(generate_synthetic(spec, 5).data.T)
        for block in (slice(0, 8), slice(8, 16)):
            sub = corr[block, block]
            self.assertGreater(sub[~np.eye(8, dtype=bool)].min(), 0.7)

    def test_zero_strength_uncorrelated(self):
        spec = SyntheticSpec.from_sizes([3, 3], n_samples=20000, sample_rate=1000.0, shared_signal_strength=0.0)
        corr = np.corrcoef(generate_synthetic(spec, 9).data.T)
        self.assertLess(np.abs(corr[~np.eye(6, dtype=bool)]).max(), 0.1)

    def test_deterministic(self):
        spec = SyntheticSpec.from_sizes([2, 2], n_samples=500, sample_rate=1000.0, shared_signal_strength=0.5)
        a = generate_synthetic(spec, 42).data
        b = generate_synthetic(spec, 42).data
        self.assertEqual(a.tobytes(), b.tobytes())
        self.assertNotEqual(a.tobytes(), generate_synthetic(spec, 43).data.tobytes())

    def test_anticorrelated_pairs(self):
        """Second community of a pair carries the negated latent of the first"""
        spec = SyntheticSpec.from_sizes(
            [3, 3],
            n_samples=20000,
            sample_rate=1000.0,
            shared_signal_strength=0.9,
            noise_level=0.2,
            anticorrelated_pairs=True,
            anticorrelation_strength=0.5,
        )
        corr = np.corrcoef(generate_synthetic(spec, 1).data.T)
        self.assertTrue(np.all(corr[:3, 3:] < -0.2))

    def test_latent_band_must_fit_nyquist(self):
        with self.assertRaises(ConfigError):
            SyntheticSpec.from_sizes(
                [2, 2], n_samples=100, sample_rate=1000.0, shared_signal_strength=0.5, latent_band=(100, 600)
            )


if __name__ == "__main__":
    unittest.main()
