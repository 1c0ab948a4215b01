"""Seeded genetic-algorithm engine with binary, real, and permutation encodings.

The engine maximizes a caller-supplied fitness function. Selection is
tournament of two, crossover is single-point (ordered crossover for
permutations), and a mutation event changes exactly one gene. Elites are
copied through unchanged, so the best fitness never regresses. Runs are
deterministic for a given config and seed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Sequence

import numpy as np


class Encoding(str, Enum):
    BINARY = "binary"
    REAL = "real"
    PERMUTATION = "permutation"


class GaError(ValueError):
    """Raised for invalid configs or fitness functions returning NaN."""


@dataclass(frozen=True)
class GaConfig:
    encoding: Encoding | str
    population_size: int = 100
    mutation_prob: float = 0.5        # probability a fresh offspring mutates
    crossover_prob: float = 0.8
    max_iterations: int = 1000
    stall_iterations: int = 250       # stop after this many generations without improvement
    elitism_fraction: float = 0.05
    seed: int = 0
    bounds: tuple[tuple[float, float], ...] | None = None  # per-gene (lo, hi), real encoding only

    def __post_init__(self) -> None:
        object.__setattr__(self, "encoding", Encoding(self.encoding))
        if self.population_size < 2:
            raise GaError(f"population_size must be >= 2, got {self.population_size}")
        if not 0.0 <= self.mutation_prob <= 1.0:
            raise GaError(f"mutation_prob must be in [0, 1], got {self.mutation_prob}")
        if not 0.0 <= self.crossover_prob <= 1.0:
            raise GaError(f"crossover_prob must be in [0, 1], got {self.crossover_prob}")
        if self.max_iterations < 1:
            raise GaError(f"max_iterations must be >= 1, got {self.max_iterations}")
        if self.stall_iterations > self.max_iterations:
            raise GaError(
                f"stall_iterations ({self.stall_iterations}) must not exceed "
                f"max_iterations ({self.max_iterations})"
            )
        if not 0.0 <= self.elitism_fraction < 1.0:
            raise GaError(f"elitism_fraction must be in [0, 1), got {self.elitism_fraction}")
        if self.bounds is not None:
            bounds = tuple((float(lo), float(hi)) for lo, hi in self.bounds)
            for lo, hi in bounds:
                if not hi > lo:
                    raise GaError(f"each bound must satisfy hi > lo, got ({lo}, {hi})")
            object.__setattr__(self, "bounds", bounds)


@dataclass(frozen=True)
class Chromosome:
    """One candidate solution: a bit vector, real vector, or permutation."""

    encoding: Encoding
    genes: np.ndarray

    def __post_init__(self) -> None:
        genes = np.asarray(self.genes)
        if self.encoding is Encoding.PERMUTATION:
            genes = genes.astype(np.int64)
        elif self.encoding is Encoding.BINARY:
            genes = genes.astype(np.int64)
        else:
            genes = genes.astype(float)
        object.__setattr__(self, "genes", genes)

    def validate(self, bounds: Sequence[tuple[float, float]] | None = None) -> None:
        if self.encoding is Encoding.BINARY:
            if not np.all((self.genes == 0) | (self.genes == 1)):
                raise GaError(f"binary genes must be 0/1: {self.genes!r}")
        elif self.encoding is Encoding.PERMUTATION:
            if not np.array_equal(np.sort(self.genes), np.arange(len(self.genes))):
                raise GaError(f"genes are not a permutation of 0..n-1: {self.genes!r}")
        else:
            if bounds is not None:
                lo = np.array([b[0] for b in bounds])
                hi = np.array([b[1] for b in bounds])
                if np.any(self.genes < lo) or np.any(self.genes > hi):
                    raise GaError(f"real genes outside bounds: {self.genes!r}")


@dataclass(frozen=True)
class GaResult:
    best: Chromosome
    best_fitness: float
    history: tuple[float, ...]   # best fitness per generation, entry 0 is the initial population
    generations_run: int
    terminated_by: str           # "max_iter" or "stall"


FitnessFn = Callable[[Chromosome], float]


def _random_chromosome(config: GaConfig, genome_len: int, rng: np.random.Generator) -> Chromosome:
    if config.encoding is Encoding.BINARY:
        genes = rng.integers(0, 2, size=genome_len)
    elif config.encoding is Encoding.PERMUTATION:
        genes = rng.permutation(genome_len)
    else:
        lo = np.array([b[0] for b in config.bounds])
        hi = np.array([b[1] for b in config.bounds])
        genes = rng.uniform(lo, hi)
    return Chromosome(encoding=config.encoding, genes=genes)


def mutate(
    chromosome: Chromosome,
    rng: np.random.Generator,
    bounds: Sequence[tuple[float, float]] | None = None,
) -> Chromosome:
    """Apply one minimal change: flip a bit, resample one real uniformly within
    its bounds, or reverse a random segment of a permutation.

    Segment reversal keeps the bijection and gives tour encodings the local
    reconnection moves they need; a bare position swap stalls the search on
    instances of even moderate size.
    """
    genes = chromosome.genes.copy()
    n = len(genes)
    if chromosome.encoding is Encoding.PERMUTATION:
        lo = int(rng.integers(0, n - 1))
        hi = int(rng.integers(lo + 2, n + 1))
        genes[lo:hi] = genes[lo:hi][::-1]
    elif chromosome.encoding is Encoding.BINARY:
        i = int(rng.integers(n))
        genes[i] = 1 - genes[i]
    else:
        if bounds is None:
            raise GaError("real-encoded mutation requires bounds")
        i = int(rng.integers(n))
        lo, hi = bounds[i]
        genes[i] = rng.uniform(lo, hi)
    return Chromosome(encoding=chromosome.encoding, genes=genes)


def crossover(
    a: Chromosome,
    b: Chromosome,
    rng: np.random.Generator,
    cut: int | None = None,
) -> tuple[Chromosome, Chromosome]:
    """Produce two children: single-point for binary/real, ordered crossover
    for permutations. A cut of 0 degenerates to returning the parents."""
    if a.encoding is not b.encoding or len(a.genes) != len(b.genes):
        raise GaError("parents must share encoding and length")
    n = len(a.genes)
    if a.encoding is Encoding.PERMUTATION:
        lo, hi = sorted(rng.choice(n + 1, size=2, replace=False))
        return (
            Chromosome(a.encoding, _ordered_cross(a.genes, b.genes, lo, hi)),
            Chromosome(a.encoding, _ordered_cross(b.genes, a.genes, lo, hi)),
        )
    if cut is None:
        cut = int(rng.integers(0, n))
    child1 = np.concatenate([a.genes[:cut], b.genes[cut:]])
    child2 = np.concatenate([b.genes[:cut], a.genes[cut:]])
    return Chromosome(a.encoding, child1), Chromosome(a.encoding, child2)


def _ordered_cross(p1: np.ndarray, p2: np.ndarray, lo: int, hi: int) -> np.ndarray:
    # keep p1's slice [lo, hi); fill the rest from p2 in order, starting after
    # the slice and wrapping
    n = len(p1)
    child = np.full(n, -1, dtype=np.int64)
    child[lo:hi] = p1[lo:hi]
    kept = set(p1[lo:hi].tolist())
    fill = [g for g in np.concatenate([p2[hi:], p2[:hi]]) if int(g) not in kept]
    slots = [(hi + i) % n for i in range(n - (hi - lo))]
    for i, g in zip(slots, fill):
        child[i] = g
    return child


def _evaluate(fitness: FitnessFn, chromosome: Chromosome) -> float:
    value = float(fitness(chromosome))
    if np.isnan(value):
        raise GaError(f"fitness returned NaN for chromosome {chromosome.genes!r}")
    return value


def run(config: GaConfig, fitness: FitnessFn, genome_len: int) -> GaResult:
    """Evolve a population and return the best chromosome found.

    Terminates after ``max_iterations`` generations, or earlier once
    ``stall_iterations`` generations pass without the best fitness improving.
    """
    if genome_len < 1:
        raise GaError(f"genome_len must be >= 1, got {genome_len}")
    if config.encoding is Encoding.PERMUTATION and genome_len < 2:
        raise GaError("permutation encoding needs genome_len >= 2")
    if config.encoding is Encoding.REAL:
        if config.bounds is None or len(config.bounds) != genome_len:
            raise GaError("real encoding requires one (lo, hi) bound per gene")

    rng = np.random.default_rng(config.seed)
    population = [_random_chromosome(config, genome_len, rng) for _ in range(config.population_size)]
    scores = np.array([_evaluate(fitness, c) for c in population])

    elite_count = int(round(config.population_size * config.elitism_fraction))
    if config.elitism_fraction > 0:
        elite_count = max(1, elite_count)

    best_idx = int(np.argmax(scores))
    best, best_fitness = population[best_idx], float(scores[best_idx])
    history = [best_fitness]
    since_improvement = 0
    terminated_by = "max_iter"
    generations = 0

    for _ in range(config.max_iterations):
        order = np.argsort(-scores, kind="stable")
        next_population = [population[i] for i in order[:elite_count]]
        while len(next_population) < config.population_size:
            p1 = _tournament(population, scores, rng)
            p2 = _tournament(population, scores, rng)
            if rng.random() < config.crossover_prob:
                c1, c2 = crossover(p1, p2, rng)
            else:
                c1, c2 = p1, p2
            for child in (c1, c2):
                if len(next_population) >= config.population_size:
                    break
                if rng.random() < config.mutation_prob:
                    child = mutate(child, rng, config.bounds)
                next_population.append(child)
        population = next_population
        scores = np.array([_evaluate(fitness, c) for c in population])
        generations += 1

        gen_best = int(np.argmax(scores))
        if float(scores[gen_best]) > best_fitness:
            best, best_fitness = population[gen_best], float(scores[gen_best])
            since_improvement = 0
        else:
            since_improvement += 1
        history.append(max(best_fitness, history[-1]))
        if since_improvement >= config.stall_iterations:
            terminated_by = "stall"
            break

    return GaResult(
        best=best,
        best_fitness=best_fitness,
        history=tuple(history),
        generations_run=generations,
        terminated_by=terminated_by,
    )


def _tournament(
    population: list[Chromosome], scores: np.ndarray, rng: np.random.Generator
) -> Chromosome:
    i, j = rng.integers(0, len(population), size=2)
    return population[i] if scores[i] >= scores[j] else population[j]
