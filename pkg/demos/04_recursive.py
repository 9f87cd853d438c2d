"""Recursive splitting of a sequence with two change points."""
from jsdseg import generate_classical_sequence, segment_recursive

seq = generate_classical_sequence([([0.95, 0.05], 1000), ([0.5, 0.5], 1000), ([0.05, 0.95], 1000)], seed=3)
for threshold in (0.2, 0.02, 0.002):
    print(f"threshold {threshold:<6} -> change points {segment_recursive(seq, threshold, min_segment=50)}")
