"""Recognition harness: edge-map features, nearest-neighbour classification,
accuracy and genuine/impostor ROC AUC.

Noise is only ever added to test images; the training set is the clean
gallery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path
from typing import NamedTuple, Sequence

import numpy as np

from .errors import (
    DimensionMismatch,
    EmptyClass,
    InsufficientSamples,
    PgmError,
    UnreadableImage,
)
from .imgcore import GrayImage, as_array, read_pgm, to_bytes, write_pgm
from .methods import respond
from .sketchop import DEFAULT_CONFIG, LstConfig
from .synthbench import add_noise

RESULTS_HEADER = ("method", "train_frac", "noise_pct", "seed", "accuracy", "auc")


class Sample(NamedTuple):
    label: str
    image: GrayImage


@dataclass(frozen=True)
class LabeledDataset:
    samples: tuple

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(Sample(*s) for s in self.samples))

    @property
    def labels(self):
        return [s.label for s in self.samples]

    @property
    def classes(self):
        return sorted(set(self.labels))

    def __len__(self):
        return len(self.samples)


class FeatureVector(NamedTuple):
    values: np.ndarray
    label: str


# --------------------------------------------------------------------------
# datasets


def ingest_dataset(root) -> LabeledDataset:
    """Load ``root/<class>/*.pgm``; classes and files are taken in lexicographic order."""
    root = Path(root)
    if not root.is_dir():
        raise FileNotFoundError(f"dataset directory not found: {root}")
    samples = []
    for class_dir in sorted(p for p in root.iterdir() if p.is_dir()):
        files = sorted(p for p in class_dir.iterdir() if p.is_file())
        if len(files) < 2:
            raise EmptyClass("class needs at least 2 images", class_dir)
        for f in files:
            try:
                img = read_pgm(f)
            except (PgmError, OSError) as exc:
                raise UnreadableImage(f"cannot read image ({exc})", f) from exc
            samples.append(Sample(class_dir.name, img))
    if len({s.label for s in samples}) < 2:
        raise EmptyClass("dataset needs at least 2 classes", root)
    return LabeledDataset(samples)


def make_dataset(classes: int = 5, per_class: int = 10, size: int = 64, seed: int = 0,
                 noise_pct: float = 5.0) -> LabeledDataset:
    """Grating textures, one orientation/frequency pair per class.

    Each sample gets a random phase, a small contrast jitter and additive
    noise, then is quantized to 8 bits so it survives a PGM round trip.
    """
    if classes < 2:
        raise ValueError("need at least 2 classes")
    if per_class < 2:
        raise ValueError("need at least 2 images per class")
    rng = np.random.default_rng(seed)
    y, x = np.mgrid[0:size, 0:size].astype(np.float64)
    width = len(str(classes - 1))
    samples = []
    for c in range(classes):
        theta = np.pi * c / classes
        cycles = 3.0 + 1.5 * (c % 3)
        u = (x * np.cos(theta) + y * np.sin(theta)) / size
        for _ in range(per_class):
            phase = rng.uniform(-np.pi / 8, np.pi / 8)
            contrast = rng.uniform(80.0, 110.0)
            img = 128.0 + contrast * np.sin(2 * np.pi * cycles * u + phase)
            img = img + rng.normal(0.0, noise_pct / 100.0 * 255.0, img.shape)
            samples.append(Sample(f"class{c:0{width}d}", GrayImage(to_bytes(img).astype(np.float64))))
    return LabeledDataset(samples)


def write_dataset(dataset: LabeledDataset, root) -> None:
    root = Path(root)
    counters = {}
    for s in dataset.samples:
        i = counters.get(s.label, 0)
        counters[s.label] = i + 1
        d = root / s.label
        d.mkdir(parents=True, exist_ok=True)
        write_pgm(s.image, d / f"{i:04d}.pgm")


def split(dataset: LabeledDataset, train_fraction: float, seed):
    """Stratified shuffle split; per class ``floor(f * n + 0.5)`` samples train."""
    if not 0 < train_fraction < 1:
        raise ValueError("train_fraction must lie in (0, 1)")
    rng = np.random.default_rng(seed)
    by_class = {}
    for i, s in enumerate(dataset.samples):
        by_class.setdefault(s.label, []).append(i)
    train, test = [], []
    for label in sorted(by_class):
        idx = by_class[label]
        n_train = int(math.floor(train_fraction * len(idx) + 0.5))
        if n_train < 1 or n_train > len(idx) - 1:
            raise InsufficientSamples(
                f"class {label!r}: {len(idx)} samples at fraction {train_fraction} "
                f"gives {n_train} train / {len(idx) - n_train} test")
        order = rng.permutation(len(idx))
        train += [dataset.samples[idx[j]] for j in order[:n_train]]
        test += [dataset.samples[idx[j]] for j in order[n_train:]]
    return LabeledDataset(train), LabeledDataset(test)


# --------------------------------------------------------------------------
# features and classification


def block_mean(values: np.ndarray, factor: int) -> np.ndarray:
    """Centre-crop to a multiple of ``factor`` then average ``factor x factor`` blocks."""
    if factor < 1:
        raise ValueError("downsample factor must be a positive integer")
    h, w = values.shape
    hh, ww = h - h % factor, w - w % factor
    if hh == 0 or ww == 0:
        raise ValueError(f"downsample factor {factor} exceeds image size {w}x{h}")
    top, left = (h - hh) // 2, (w - ww) // 2
    v = values[top:top + hh, left:left + ww]
    return v.reshape(hh // factor, factor, ww // factor, factor).mean(axis=(1, 3))


def extract_features(img, method: str, downsample: int = 1, label=None,
                     cfg: LstConfig = DEFAULT_CONFIG) -> FeatureVector:
    resp = respond(img, method, cfg)
    return FeatureVector(block_mean(resp.values, downsample).ravel(), label)


def feature_matrix(dataset: LabeledDataset, method: str, downsample: int = 1,
                   cfg: LstConfig = DEFAULT_CONFIG, noise_pct: float = 0.0, seed=0):
    """Stack features for every sample; ``noise_pct`` corrupts each image first."""
    rows = []
    for i, s in enumerate(dataset.samples):
        img = s.image
        if noise_pct > 0:
            img = add_noise(img, noise_pct, [seed, i])
        rows.append(extract_features(img, method, downsample, cfg=cfg).values)
    return np.vstack(rows), dataset.labels


def _as_matrix(train):
    if isinstance(train, np.ndarray):
        return np.atleast_2d(np.asarray(train, dtype=np.float64))
    return np.vstack([np.asarray(getattr(t, "values", t), dtype=np.float64) for t in train])


def knn_classify(train, train_labels: Sequence, query, k: int = 1):
    """Majority label among the ``k`` Euclidean-nearest training vectors.

    Distance ties go to the earlier training vector; vote ties go to the
    label with the smaller summed distance, then to the label seen first.
    """
    X = _as_matrix(train)
    q = np.asarray(getattr(query, "values", query), dtype=np.float64).ravel()
    if k < 1 or k % 2 == 0:
        raise ValueError("k must be a positive odd integer")
    if X.shape[0] == 0:
        raise ValueError("empty training set")
    if X.shape[0] != len(train_labels):
        raise ValueError("one label per training vector required")
    if X.shape[1] != q.size:
        raise DimensionMismatch(f"query has {q.size} features, training set has {X.shape[1]}")
    d = np.sqrt(np.sum((X - q) ** 2, axis=1))
    nearest = np.argsort(d, kind="stable")[:k]
    if k == 1:
        return train_labels[nearest[0]]
    votes = {}
    for rank, i in enumerate(nearest):
        count, dsum, first = votes.get(train_labels[i], (0, 0.0, rank))
        votes[train_labels[i]] = (count + 1, dsum + d[i], first)
    return min(votes, key=lambda lab: (-votes[lab][0], votes[lab][1], votes[lab][2]))


def pairwise_distances(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    return np.sqrt(((A[:, np.newaxis, :] - B[np.newaxis, :, :]) ** 2).sum(axis=2))


# --------------------------------------------------------------------------
# experiments


def evaluate(train: LabeledDataset, test: LabeledDataset, method: str, noise_pct: float = 0.0,
             seed=0, downsample: int = 4, k: int = 1, cfg: LstConfig = DEFAULT_CONFIG,
             shuffle_labels: bool = False) -> float:
    """Accuracy of k-NN on ``test`` (noised with ``noise_pct``) against ``train``.

    ``shuffle_labels`` permutes the training labels first, a chance-level control.
    """
    Xtr, ytr = feature_matrix(train, method, downsample, cfg)
    Xte, yte = feature_matrix(test, method, downsample, cfg, noise_pct, seed)
    if shuffle_labels:
        ytr = [ytr[i] for i in np.random.default_rng([seed, 2]).permutation(len(ytr))]
    correct = sum(knn_classify(Xtr, ytr, q, k) == y for q, y in zip(Xte, yte))
    return correct / len(yte)


def accuracy_experiment(dataset: LabeledDataset, method: str, train_fraction: float = 0.5,
                        noise_pct: float = 0.0, seed=0, **kwargs) -> float:
    train, test = split(dataset, train_fraction, seed)
    return evaluate(train, test, method, noise_pct, seed, **kwargs)


def genuine_impostor(train_X, train_y, test_X, test_y):
    """Nearest same-class and nearest other-class training distances per test vector."""
    D = pairwise_distances(np.asarray(test_X, dtype=np.float64), np.asarray(train_X, dtype=np.float64))
    same = np.asarray(test_y)[:, np.newaxis] == np.asarray(train_y)[np.newaxis, :]
    genuine = np.where(same, D, np.inf).min(axis=1)
    impostor = np.where(~same, D, np.inf).min(axis=1)
    return genuine, impostor


def auc_from_scores(genuine, impostor) -> float:
    """P(genuine < impostor) over all pairs, ties counting one half."""
    g = np.asarray(genuine, dtype=np.float64).ravel()
    i = np.asarray(impostor, dtype=np.float64).ravel()
    if g.size == 0 or i.size == 0:
        raise ValueError("need at least one genuine and one impostor score")
    less = np.count_nonzero(g[:, np.newaxis] < i[np.newaxis, :])
    ties = np.count_nonzero(g[:, np.newaxis] == i[np.newaxis, :])
    return (less + 0.5 * ties) / (g.size * i.size)


def roc_auc(dataset: LabeledDataset, method: str, train_fraction: float = 0.5, seed=0,
            noise_pct: float = 0.0, downsample: int = 4, cfg: LstConfig = DEFAULT_CONFIG) -> float:
    train, test = split(dataset, train_fraction, seed)
    Xtr, ytr = feature_matrix(train, method, downsample, cfg)
    Xte, yte = feature_matrix(test, method, downsample, cfg, noise_pct, seed)
    return auc_from_scores(*genuine_impostor(Xtr, ytr, Xte, yte))
