"""Smoke test for the python bindings: exercises one call from each area and
checks a handful of values that are known in closed form."""

import math
import random

import bradykde as bk


def close(a, b, tol=1e-9):
    return abs(a - b) <= tol


# kernels
assert close(bk.eval_kernel(bk.Kernel.gaussian, 0.0), 1.0 / math.sqrt(2.0 * math.pi), 1e-12)
assert bk.eval_kernel(bk.Kernel.epanechnikov, 1.5) == 0.0
assert close(bk.eval_kernel_conv(bk.Kernel.gaussian, 0.0), 1.0 / math.sqrt(4.0 * math.pi), 1e-12)
assert bk.kernel_from_name("cosine") == bk.Kernel.cosine

# univariate KDE against a hand-rolled sum
rng = random.Random(4)
data = [rng.gauss(0.0, 1.0) for _ in range(40)]
h, x = 0.7, 0.3
manual = sum(math.exp(-((x - xi) / h) ** 2 / 2.0) / math.sqrt(2.0 * math.pi) for xi in data)
manual /= len(data) * h
assert close(bk.kde_univariate(data, bk.Kernel.gaussian, h, x), manual, 1e-12)

# bandwidth selection returns a grid point and its own curve minimum
sample = [rng.gauss(0.0, 1.0) for _ in range(60)]
grid = bk.make_bandwidth_grid(0.1, 2.0, 12, True)
sel = bk.select_bandwidth_1d(sample, bk.Kernel.gaussian, grid)
assert sel.h[0] in grid
best = min(sel.curve, key=lambda e: e.score)
assert sel.h[0] == best.h[0]

# prediction set: a far-away point is flagged, the data centroid is not
train = [[rng.gauss(0.0, 1.0), rng.gauss(0.0, 1.0)] for _ in range(80)]
hh = [0.5, 0.5]
dens = [bk.kde_product(train, bk.Kernel.gaussian, hh, p) for p in train]
c_k = bk.compute_threshold(dens, len(train), 0.05, bk.Kernel.gaussian, 0.5)
dgrid = bk.kde_grid(train, bk.Kernel.gaussian, hh, 48, 3.0)
pset = bk.build_prediction_set(dgrid, c_k, 0.05, len(train))
assert not pset.empty_set and len(pset.hull) >= 3
assert bk.test_onset(pset, bk.Point2(40.0, 0.0))
cx = sum(p[0] for p in train) / len(train)
cy = sum(p[1] for p in train) / len(train)
assert not bk.test_onset(pset, bk.Point2(cx, cy))

# metric table from a fixed confusion matrix
metrics = bk.compute_metrics(bk.ConfusionMatrix(18, 26, 9, 415))
assert close(metrics.sensitivity, 18.0 / 27.0, 1e-12)
assert close(metrics.precision, 18.0 / 44.0, 1e-12)
assert close(bk.compute_epe(bk.ConfusionMatrix(18, 26, 9, 415), 468), 35.0 / 468.0, 1e-12)
empty = bk.compute_metrics(bk.ConfusionMatrix(0, 0, 0, 0))
assert empty.sensitivity is None and empty.accuracy is None

# synthetic data + one full trial, deterministic under the seed
spec = bk.SyntheticSpec()
spec.components = [bk.MixtureComponent(1.0, 50.0, 0.0, 4.0, 0.5)]
spec.n_points = 300
spec.n_anomalies = 12
synth = bk.generate_synthetic(spec, 21)
assert len(synth.peaks) == 312 and sum(synth.labels) == 12

td = bk.TrialData()
td.peaks = synth.peaks
td.truth = synth.labels
opts = bk.TrialOptions()
opts.grid_size = 48
r1 = bk.run_trial(td, bk.SplitSpec(0.6, 0.2, 0.2), 9, opts)
r2 = bk.run_trial(td, bk.SplitSpec(0.6, 0.2, 0.2), 9, opts)
assert r1.h == r2.h and r1.c_k == r2.c_k
assert (r1.cm.tp, r1.cm.fp, r1.cm.fn, r1.cm.tn) == (r2.cm.tp, r2.cm.fp, r2.cm.fn, r2.cm.tn)
assert r1.cm.total() == 62

# ECG path: parse, calibrate, detect peaks on a pulse train
header = bk.parse_header("rec 1 250\nrec.dat 16 200 11 1023 base=512 0 ECG\n")
assert header.fs == 250.0 and header.gain == 200.0 and header.base == 512

n = 3000
raw = [512] * n
for c in range(100, n - 20, 250):
    for off in range(-10, 11):
        raw[c + off] = int(512 + 200 * 0.5 * (1 + math.cos(math.pi * off / 10)) + 0.5)
sig = bk.calibrate(raw, header)
assert sig.calibrated and close(sig.samples[100], 1.0, 5e-3)
clean = bk.remove_baseline_wander(sig)
ev = bk.Event()
ev.samples = clean.samples
peaks = bk.detect_r_peaks(ev, 250.0)
assert len(peaks) >= 8
centers = set(range(100, n - 20, 250))
assert all(any(abs(p.t - c) <= 2 for c in centers) for p in peaks)

print("smoke ok:", len(peaks), "peaks detected, trial cm =",
      (r1.cm.tp, r1.cm.fp, r1.cm.fn, r1.cm.tn))
