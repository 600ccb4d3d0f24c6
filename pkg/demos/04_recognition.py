"""
Nearest-neighbour recognition on the synthetic grating dataset with
test-time noise, using each detector's edge map as the feature vector.
"""

import numpy as np

from lstedge.recognize import accuracy_experiment, make_dataset, roc_auc

ds = make_dataset(classes=5, per_class=10, size=64, seed=0)
print(len(ds), "images,", len(ds.classes), "classes")

## Accuracy against test-time noise, averaged over 10 splits
methods = ("lst", "sobel", "prewitt", "kirsch", "sis")
noise_levels = (0, 5, 10, 20)
print("noise %  " + "  ".join(f"{m:>7s}" for m in methods))
for noise in noise_levels:
    accs = [np.mean([accuracy_experiment(ds, m, 0.5, noise, seed) for seed in range(10)]) for m in methods]
    print(f"{noise:7d}  " + "  ".join(f"{a:7.3f}" for a in accs))

## Accuracy and ROC AUC as the training fraction varies (clean test images)
for frac in (0.2, 0.5, 0.8):
    acc = np.mean([accuracy_experiment(ds, "lst", frac, 0, s) for s in range(10)])
    auc = np.mean([roc_auc(ds, "lst", frac, s) for s in range(10)])
    print(f"train {frac:.0%}: accuracy {acc:.3f}, AUC {auc:.3f}")

## Shuffled training labels give chance-level accuracy
chance = [accuracy_experiment(ds, "lst", 0.5, 20, s, shuffle_labels=True) for s in range(25)]
print(f"shuffled labels: {np.mean(chance):.3f} (chance = {1 / len(ds.classes):.3f})")
