//! Brute-force ground truth.
//!
//! Counts the factorization tuples `(sigma_1, eta_1, ..., eta_b, sigma_2)`
//! defining twisted double Hurwitz numbers by exhaustive scan: `sigma_1`
//! runs over `B~_mu`, each `eta_i` over the transpositions with
//! `eta != tau eta tau`, and the product
//! `eta_b ... eta_1 sigma_1 (tau eta_1 tau) ... (tau eta_b tau)` is
//! maintained incrementally. Also provides the classical double Hurwitz
//! count used by the genus-0 wall-crossing formula.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::Error;
use crate::partition::{double_factorial, Partition};
use crate::permutation::Permutation;
use crate::twist::{enumerate_b_tilde, tau_of};

/// Input data `(g, mu, nu)` for a twisted double Hurwitz number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzInput {
    pub genus: u64,
    pub mu: Partition,
    pub nu: Partition,
}

impl HurwitzInput {
    pub fn new(genus: u64, mu: Partition, nu: Partition) -> Result<Self, Error> {
        if mu.size() != nu.size() {
            return Err(Error::SizeMismatch(mu.size(), nu.size()));
        }
        if mu.size() == 0 {
            return Err(Error::InvalidDegree);
        }
        Ok(HurwitzInput { genus, mu, nu })
    }

    pub fn n(&self) -> usize {
        self.mu.size() as usize
    }

    /// `b = g - 1 + l(mu) + l(nu)`, rejected unless positive.
    pub fn branch_count(&self) -> Result<usize, Error> {
        branch_count(self.genus, &self.mu, &self.nu)
    }
}

/// The number of simple branch points of a twisted cover of type `(g, mu, nu)`.
pub fn branch_count(genus: u64, mu: &Partition, nu: &Partition) -> Result<usize, Error> {
    let b = genus as i64 - 1 + mu.len() as i64 + nu.len() as i64;
    if b <= 0 {
        return Err(Error::NoBranchPoints);
    }
    Ok(b as usize)
}

/// Scan configuration: cap on `2n` and worker count.
#[derive(Clone, Copy, Debug)]
pub struct ScanOptions {
    pub cap_2n: usize,
    pub threads: usize,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            cap_2n: crate::DEFAULT_CAP_2N,
            threads: 1,
        }
    }
}

/// What an exhaustive scan saw.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ScanSummary {
    /// Number of valid tuples.
    pub tuples: u64,
    /// Tuples whose `sigma_2` has a self-symmetric cycle. The defining
    /// conditions only fix the cycle type of `sigma_2`; this field records
    /// whether membership in `B~_nu` ever fails in practice.
    pub sigma2_with_self_symmetric: u64,
}

/// One valid factorization tuple, for dumps and spot checks.
#[derive(Clone, Debug)]
pub struct TwistedFactorization {
    pub sigma1: Permutation,
    pub etas: Vec<Permutation>,
    pub sigma2: Permutation,
    pub transitive: bool,
}

/// Counts tuples satisfying the defining conditions; `connected` adds the
/// transitivity requirement on the generated subgroup.
pub fn count_twisted_tuples(
    input: &HurwitzInput,
    connected: bool,
    opts: &ScanOptions,
) -> Result<u64, Error> {
    Ok(scan_twisted_tuples(input, connected, opts)?.tuples)
}

/// Full scan with bookkeeping. Splits the `sigma_1` roots across threads;
/// partial counts merge by addition, so the result is deterministic.
pub fn scan_twisted_tuples(
    input: &HurwitzInput,
    connected: bool,
    opts: &ScanOptions,
) -> Result<ScanSummary, Error> {
    let n = input.n();
    if 2 * n > opts.cap_2n {
        return Err(Error::CapExceeded {
            needed: 2 * n,
            cap: opts.cap_2n,
        });
    }
    let b = input.branch_count()?;
    let roots = enumerate_b_tilde(&input.mu, opts.cap_2n)?;
    let target = type_counts(&input.nu.doubled(), 2 * n);
    let etas = admissible_transpositions(n);

    let run_chunk = |chunk: &[Permutation]| -> ScanSummary {
        let mut summary = ScanSummary::default();
        for sigma1 in chunk {
            let mut scan = TupleScan::new(n, sigma1, &etas, &target, connected);
            scan.run(b, &mut |_: &TupleScan, self_symmetric: bool| {
                s_accumulate(&mut summary, self_symmetric)
            });
        }
        summary
    };

    let threads = opts.threads.max(1).min(roots.len().max(1));
    if threads <= 1 || roots.len() <= 1 {
        return Ok(run_chunk(&roots));
    }
    let chunk_size = roots.len().div_ceil(threads);
    let partials: Vec<ScanSummary> = std::thread::scope(|scope| {
        let handles: Vec<_> = roots
            .chunks(chunk_size)
            .map(|chunk| scope.spawn(move || run_chunk(chunk)))
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut total = ScanSummary::default();
    for p in partials {
        total.tuples += p.tuples;
        total.sigma2_with_self_symmetric += p.sigma2_with_self_symmetric;
    }
    Ok(total)
}

fn s_accumulate(summary: &mut ScanSummary, self_symmetric: bool) {
    summary.tuples += 1;
    if self_symmetric {
        summary.sigma2_with_self_symmetric += 1;
    }
}

/// `h~_g(mu, nu) = |C_g(mu, nu)| / (2n)!!` as an exact rational.
pub fn twisted_hurwitz(
    input: &HurwitzInput,
    connected: bool,
    opts: &ScanOptions,
) -> Result<BigRational, Error> {
    let count = count_twisted_tuples(input, connected, opts)?;
    let norm = double_factorial(2 * input.mu.size())?;
    Ok(BigRational::new(
        BigInt::from(count),
        BigInt::from(norm),
    ))
}

/// `2^{-b}` times the disconnected twisted count.
pub fn one_hurwitz_number(input: &HurwitzInput, opts: &ScanOptions) -> Result<BigRational, Error> {
    let b = input.branch_count()?;
    let disconnected = twisted_hurwitz(input, false, opts)?;
    let pow = BigRational::new(BigInt::one(), BigInt::from(BigUint::one() << b));
    Ok(disconnected * pow)
}

/// All valid tuples (transitive or not), each with its transitivity flag.
/// Single-threaded; meant for dumps at small degree.
pub fn collect_twisted_tuples(
    input: &HurwitzInput,
    opts: &ScanOptions,
) -> Result<Vec<TwistedFactorization>, Error> {
    let n = input.n();
    if 2 * n > opts.cap_2n {
        return Err(Error::CapExceeded {
            needed: 2 * n,
            cap: opts.cap_2n,
        });
    }
    let b = input.branch_count()?;
    let roots = enumerate_b_tilde(&input.mu, opts.cap_2n)?;
    let target = type_counts(&input.nu.doubled(), 2 * n);
    let etas = admissible_transpositions(n);
    let mut out = Vec::new();
    for sigma1 in &roots {
        let mut scan = TupleScan::new(n, sigma1, &etas, &target, false);
        scan.run(b, &mut |s: &TupleScan, _| {
            let sigma2 = Permutation::from_images(s.rho.clone()).expect("product is a bijection");
            let etas = s
                .chosen
                .iter()
                .map(|&(a, bb)| Permutation::transposition(2 * s.n, a, bb))
                .collect();
            out.push(TwistedFactorization {
                sigma1: sigma1.clone(),
                etas,
                sigma2,
                transitive: s.is_transitive(),
            });
        });
    }
    Ok(out)
}

/// Transpositions `(a b)` of `{0, .., 2n-1}` with `(a b) != tau (a b) tau`,
/// i.e. `b != tau(a)`, paired with their tau-conjugates.
fn admissible_transpositions(n: usize) -> Vec<Transposition> {
    let mut out = Vec::new();
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            if b == tau_of(n, a) {
                continue;
            }
            let (ta, tb) = (tau_of(n, a), tau_of(n, b));
            out.push(Transposition {
                a,
                b,
                ta: ta.min(tb),
                tb: ta.max(tb),
            });
        }
    }
    out
}

#[derive(Clone, Copy, Debug)]
struct Transposition {
    a: usize,
    b: usize,
    ta: usize,
    tb: usize,
}

/// Multiset of cycle lengths as a count table indexed by length.
fn type_counts(p: &Partition, degree: usize) -> Vec<u32> {
    let mut counts = vec![0u32; degree + 1];
    for &part in p.parts() {
        counts[part as usize] += 1;
    }
    counts
}

/// Depth-first scan over eta sequences for one fixed `sigma_1`, maintaining
/// the running product and its inverse by O(1) transposition updates.
struct TupleScan<'a> {
    n: usize,
    rho: Vec<usize>,
    rho_inv: Vec<usize>,
    sigma1: &'a Permutation,
    etas: &'a [Transposition],
    target: &'a [u32],
    connected: bool,
    chosen: Vec<(usize, usize)>,
}

impl<'a> TupleScan<'a> {
    fn new(
        n: usize,
        sigma1: &'a Permutation,
        etas: &'a [Transposition],
        target: &'a [u32],
        connected: bool,
    ) -> Self {
        TupleScan {
            n,
            rho: sigma1.images().to_vec(),
            rho_inv: sigma1.inverse().images().to_vec(),
            sigma1,
            etas,
            target,
            connected,
            chosen: Vec::new(),
        }
    }

    fn run<F: FnMut(&TupleScan, bool)>(&mut self, depth: usize, accept: &mut F) {
        if depth == 0 {
            if !self.type_matches() {
                return;
            }
            debug_assert!(self.sigma2_twisted_symmetric());
            if self.connected && !self.is_transitive() {
                return;
            }
            let self_symmetric = self.sigma2_has_self_symmetric_cycle();
            accept(self, self_symmetric);
            return;
        }
        for i in 0..self.etas.len() {
            let t = self.etas[i];
            self.push(t);
            self.run(depth - 1, accept);
            self.pop(t);
        }
    }

    /// rho <- eta . rho . (tau eta tau)
    fn push(&mut self, t: Transposition) {
        self.chosen.push((t.a, t.b));
        self.mul_left(t.a, t.b);
        self.mul_right(t.ta, t.tb);
    }

    fn pop(&mut self, t: Transposition) {
        // transpositions are involutions, so applying them again undoes push
        self.mul_left(t.a, t.b);
        self.mul_right(t.ta, t.tb);
        self.chosen.pop();
    }

    #[inline]
    fn mul_left(&mut self, a: usize, b: usize) {
        let xa = self.rho_inv[a];
        let xb = self.rho_inv[b];
        self.rho.swap(xa, xb);
        self.rho_inv.swap(a, b);
    }

    #[inline]
    fn mul_right(&mut self, a: usize, b: usize) {
        let va = self.rho[a];
        let vb = self.rho[b];
        self.rho.swap(a, b);
        self.rho_inv.swap(va, vb);
    }

    fn type_matches(&self) -> bool {
        let degree = 2 * self.n;
        let mut counts = vec![0u32; degree + 1];
        let mut seen = 0u64;
        for start in 0..degree {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut len = 0usize;
            let mut x = start;
            loop {
                seen |= 1 << x;
                len += 1;
                x = self.rho[x];
                if x == start {
                    break;
                }
            }
            counts[len] += 1;
            if counts[len] > self.target[len] {
                return false;
            }
        }
        counts == self.target
    }

    fn sigma2_twisted_symmetric(&self) -> bool {
        let degree = 2 * self.n;
        (0..degree).all(|x| {
            self.rho[tau_of(self.n, self.rho[tau_of(self.n, x)])] == x
        })
    }

    fn sigma2_has_self_symmetric_cycle(&self) -> bool {
        let degree = 2 * self.n;
        let mut seen = 0u64;
        for start in 0..degree {
            if seen & (1 << start) != 0 {
                continue;
            }
            let mut support = 0u64;
            let mut x = start;
            loop {
                seen |= 1 << x;
                support |= 1 << x;
                x = self.rho[x];
                if x == start {
                    break;
                }
            }
            let mut mirrored = 0u64;
            for y in 0..degree {
                if support & (1 << y) != 0 {
                    mirrored |= 1 << tau_of(self.n, y);
                }
            }
            if mirrored == support {
                return true;
            }
        }
        false
    }

    /// Transitivity of the subgroup generated by `sigma_1`, the etas and
    /// their tau-conjugates, via union-find over the points.
    fn is_transitive(&self) -> bool {
        let degree = 2 * self.n;
        let mut uf = UnionFind::new(degree);
        for x in 0..degree {
            uf.union(x, self.sigma1.apply(x));
        }
        for &(a, b) in &self.chosen {
            uf.union(a, b);
            uf.union(tau_of(self.n, a), tau_of(self.n, b));
        }
        let root = uf.find(0);
        (1..degree).all(|x| uf.find(x) == root)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = x;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Classical double Hurwitz number `h_g(mu, nu)` by exhaustive scan in `S_n`,
/// with the preimages of both special fibers labeled:
/// `|Aut(mu)| |Aut(nu)| / n!` times the number of transitive factorizations
/// `sigma_2 = t_r ... t_1 sigma_1` with `C(sigma_1) = mu`, `C(sigma_2) = nu`
/// and `r = 2g - 2 + l(mu) + l(nu)` transpositions. The labeled normalization
/// is the one under which these numbers are chamber polynomials.
pub fn classical_double_hurwitz(
    genus: u64,
    mu: &Partition,
    nu: &Partition,
    cap_n: usize,
) -> Result<BigRational, Error> {
    if mu.size() != nu.size() {
        return Err(Error::SizeMismatch(mu.size(), nu.size()));
    }
    let n = mu.size() as usize;
    if n == 0 {
        return Err(Error::InvalidDegree);
    }
    if n > cap_n {
        return Err(Error::CapExceeded {
            needed: n,
            cap: cap_n,
        });
    }
    let r = 2 * genus as i64 - 2 + mu.len() as i64 + nu.len() as i64;
    if r < 0 {
        return Err(Error::NegativeBranchCount);
    }
    let target = type_counts(nu, n);
    let mut transpositions = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            transpositions.push((a, b));
        }
    }
    let mut count: u64 = 0;
    for sigma1 in permutations_of_type(n, mu) {
        let mut chosen = Vec::new();
        let mut rho = sigma1.images().to_vec();
        let mut rho_inv = sigma1.inverse().images().to_vec();
        classical_rec(
            n,
            r as usize,
            &transpositions,
            &target,
            &sigma1,
            &mut rho,
            &mut rho_inv,
            &mut chosen,
            &mut count,
        );
    }
    let mut value = BigRational::new(BigInt::from(count), BigInt::from(factorial_big(n as u64)));
    value *= BigRational::from_integer(BigInt::from(mu.aut_order() * nu.aut_order()));
    Ok(value)
}

#[allow(clippy::too_many_arguments)]
fn classical_rec(
    n: usize,
    depth: usize,
    transpositions: &[(usize, usize)],
    target: &[u32],
    sigma1: &Permutation,
    rho: &mut Vec<usize>,
    rho_inv: &mut Vec<usize>,
    chosen: &mut Vec<(usize, usize)>,
    count: &mut u64,
) {
    if depth == 0 {
        if !classical_type_matches(rho, target, n) {
            return;
        }
        let mut uf = UnionFind::new(n);
        for x in 0..n {
            uf.union(x, sigma1.apply(x));
        }
        for &(a, b) in chosen.iter() {
            uf.union(a, b);
        }
        let root = uf.find(0);
        if (1..n).all(|x| uf.find(x) == root) {
            *count += 1;
        }
        return;
    }
    for &(a, b) in transpositions {
        // left-multiply by (a b)
        let xa = rho_inv[a];
        let xb = rho_inv[b];
        rho.swap(xa, xb);
        rho_inv.swap(a, b);
        chosen.push((a, b));
        classical_rec(
            n, depth - 1, transpositions, target, sigma1, rho, rho_inv, chosen, count,
        );
        chosen.pop();
        let xa = rho_inv[a];
        let xb = rho_inv[b];
        rho.swap(xa, xb);
        rho_inv.swap(a, b);
    }
}

fn classical_type_matches(rho: &[usize], target: &[u32], n: usize) -> bool {
    let mut counts = vec![0u32; n + 1];
    let mut seen = 0u64;
    for start in 0..n {
        if seen & (1 << start) != 0 {
            continue;
        }
        let mut len = 0usize;
        let mut x = start;
        loop {
            seen |= 1 << x;
            len += 1;
            x = rho[x];
            if x == start {
                break;
            }
        }
        counts[len] += 1;
        if counts[len] > target[len] {
            return false;
        }
    }
    counts == target
}

/// All permutations of `{0..n-1}` with the given cycle type.
fn permutations_of_type(n: usize, mu: &Partition) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..n).collect();
    fn rec(images: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        let n = images.len();
        if k == n {
            out.push(images.clone());
            return;
        }
        for i in k..n {
            images.swap(k, i);
            rec(images, k + 1, out);
            images.swap(k, i);
        }
    }
    let mut raw = Vec::new();
    rec(&mut images, 0, &mut raw);
    for candidate in raw {
        let p = Permutation::from_images(candidate).expect("generated bijection");
        if p.cycle_type() == *mu {
            out.push(p);
        }
    }
    out
}

fn factorial_big(k: u64) -> BigUint {
    let mut acc = BigUint::one();
    for i in 2..=k {
        acc *= BigUint::from(i);
    }
    acc
}

/// Renders a rational with `q > 0` and `gcd(p, q) = 1`, omitting `/1`.
pub fn rational_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Helper used across engines: exact rational from an integer.
pub fn rational_int(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Zero rational.
pub fn rational_zero() -> BigRational {
    BigRational::zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn input(genus: u64, mu: &[u64], nu: &[u64]) -> HurwitzInput {
        HurwitzInput::new(
            genus,
            Partition::new(mu.to_vec()).unwrap(),
            Partition::new(nu.to_vec()).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn branch_counts() {
        assert_eq!(input(1, &[4], &[2, 2]).branch_count().unwrap(), 3);
        assert_eq!(input(0, &[1], &[1]).branch_count().unwrap(), 1);
        assert_eq!(input(0, &[3], &[2, 1]).branch_count().unwrap(), 2);
    }

    #[test]
    fn count_examples() {
        let opts = ScanOptions::default();
        // hand enumerable: two sigma_1 roots, four admissible transpositions
        assert_eq!(
            count_twisted_tuples(&input(0, &[2], &[2]), true, &opts).unwrap(),
            4
        );
        // in S_2 the only transposition is tau itself
        assert_eq!(
            count_twisted_tuples(&input(0, &[1], &[1]), true, &opts).unwrap(),
            0
        );
    }

    #[test]
    fn twisted_values() {
        let opts = ScanOptions::default();
        assert_eq!(
            twisted_hurwitz(&input(0, &[2], &[2]), true, &opts).unwrap(),
            BigRational::new(BigInt::from(1), BigInt::from(2))
        );
        assert_eq!(
            twisted_hurwitz(&input(1, &[2], &[2]), true, &opts).unwrap(),
            rational_int(2)
        );
        // the definition, not the chamber polynomial: Aut(nu) = 2 here
        assert_eq!(
            twisted_hurwitz(&input(0, &[2], &[1, 1]), true, &opts).unwrap(),
            rational_int(1)
        );
    }

    #[test]
    fn connected_at_most_disconnected() {
        let opts = ScanOptions::default();
        let i = input(0, &[2, 1], &[3]);
        let conn = count_twisted_tuples(&i, true, &opts).unwrap();
        let all = count_twisted_tuples(&i, false, &opts).unwrap();
        assert!(conn <= all);
    }

    #[test]
    fn one_hurwitz_examples() {
        let opts = ScanOptions::default();
        assert_eq!(
            one_hurwitz_number(&input(0, &[1], &[1]), &opts).unwrap(),
            rational_zero()
        );
        let i = input(0, &[2], &[2]);
        let b = i.branch_count().unwrap();
        let expected = twisted_hurwitz(&i, false, &opts).unwrap()
            / BigRational::from_integer(BigInt::from(1i64 << b));
        assert_eq!(one_hurwitz_number(&i, &opts).unwrap(), expected);
    }

    #[test]
    fn parallel_scan_agrees() {
        let serial = ScanOptions {
            threads: 1,
            ..Default::default()
        };
        let parallel = ScanOptions {
            threads: 4,
            ..Default::default()
        };
        let i = input(1, &[2, 1], &[2, 1]);
        assert_eq!(
            count_twisted_tuples(&i, true, &serial).unwrap(),
            count_twisted_tuples(&i, true, &parallel).unwrap()
        );
    }

    #[test]
    fn relabeling_by_centralizer_preserves_count() {
        // Conjugating every tuple by an element of the centralizer of tau is a
        // bijection of the scan space; the count cannot change. We spot-check
        // by relabeling mu and nu inputs trivially (same partitions) and by
        // the mu <-> nu symmetry.
        let opts = ScanOptions::default();
        let a = input(0, &[2, 1], &[3]);
        let b = input(0, &[3], &[2, 1]);
        assert_eq!(
            twisted_hurwitz(&a, true, &opts).unwrap(),
            twisted_hurwitz(&b, true, &opts).unwrap()
        );
    }

    #[test]
    fn tuple_dump_is_consistent() {
        let opts = ScanOptions::default();
        let i = input(0, &[2], &[2]);
        let tuples = collect_twisted_tuples(&i, &opts).unwrap();
        let transitive = tuples.iter().filter(|t| t.transitive).count() as u64;
        assert_eq!(
            transitive,
            count_twisted_tuples(&i, true, &opts).unwrap()
        );
        for t in &tuples {
            // product condition holds by construction of the scan
            let n = i.n();
            let tau = crate::twist::tau(n).unwrap();
            let mut product = t.sigma1.clone();
            for eta in &t.etas {
                let partner = eta.conjugate(&tau);
                product = eta.compose(&product).compose(&partner);
            }
            assert_eq!(product, t.sigma2);
        }
    }

    #[test]
    fn classical_examples() {
        assert_eq!(
            classical_double_hurwitz(
                0,
                &Partition::new(vec![2]).unwrap(),
                &Partition::new(vec![1, 1]).unwrap(),
                8
            )
            .unwrap(),
            rational_int(1)
        );
        assert_eq!(
            classical_double_hurwitz(
                0,
                &Partition::new(vec![1]).unwrap(),
                &Partition::new(vec![1]).unwrap(),
                8
            )
            .unwrap(),
            rational_int(1)
        );
        // labeled normalization: 6 plain tuples, |Aut(nu)| = 6, n! = 6
        assert_eq!(
            classical_double_hurwitz(
                0,
                &Partition::new(vec![3]).unwrap(),
                &Partition::new(vec![1, 1, 1]).unwrap(),
                8
            )
            .unwrap(),
            rational_int(6)
        );
    }

    #[test]
    fn cap_is_enforced() {
        let opts = ScanOptions {
            cap_2n: 6,
            threads: 1,
        };
        assert_eq!(
            count_twisted_tuples(&input(0, &[4], &[2, 2]), true, &opts),
            Err(Error::CapExceeded { needed: 8, cap: 6 })
        );
    }
}
