//! String distances (edit family, q-gram family, rank distance) and
//! consensus strings: the exact Hamming median, genetic-search closest
//! string, the two-string edit centroid, and a genetic median string.

use crate::error::{Error, Result};
use crate::order::rng_from_seed;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

/// Strings are sequences of nonnegative symbol codes; text is remapped to
/// code points at the boundary.
pub type SymbolString = Vec<u32>;

/// Per-operation costs for the weighted edit distance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EditCosts {
    pub insert: f64,
    pub delete: f64,
    pub replace: f64,
}

impl Default for EditCosts {
    fn default() -> Self {
        EditCosts {
            insert: 1.0,
            delete: 1.0,
            replace: 1.0,
        }
    }
}

impl EditCosts {
    pub fn validate(&self) -> Result<()> {
        if self.insert <= 0.0 || self.delete <= 0.0 || self.replace <= 0.0 {
            return Err(Error::InvalidParameter(
                "edit costs must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// Hamming distance value; unequal lengths are a distinguished outcome, not
/// a float overflow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Hamming {
    Finite(u64),
    Infinite,
}

impl Hamming {
    pub fn as_f64(&self) -> f64 {
        match self {
            Hamming::Finite(v) => *v as f64,
            Hamming::Infinite => f64::INFINITY,
        }
    }
}

pub fn hamming(u: &[u32], v: &[u32]) -> Hamming {
    if u.len() != v.len() {
        return Hamming::Infinite;
    }
    Hamming::Finite(u.iter().zip(v).filter(|(a, b)| a != b).count() as u64)
}

fn hamming_finite(u: &[u32], v: &[u32]) -> u64 {
    u.iter().zip(v).filter(|(a, b)| a != b).count() as u64
}

/// Weighted edit distance with the two-row dynamic program.
pub fn levenshtein(u: &[u32], v: &[u32], costs: &EditCosts) -> Result<f64> {
    costs.validate()?;
    // keep the second string as the shorter one; swapping exchanges the
    // roles of insertion and deletion
    let (s1, s2, ins, del) = if u.len() >= v.len() {
        (u, v, costs.insert, costs.delete)
    } else {
        (v, u, costs.delete, costs.insert)
    };
    let n2 = s2.len();
    let mut cur: Vec<f64> = (0..=n2).map(|j| j as f64 * ins).collect();
    let mut last = vec![0.0; n2 + 1];
    for (i, &c1) in s1.iter().enumerate() {
        std::mem::swap(&mut last, &mut cur);
        cur[0] = (i + 1) as f64 * del;
        for (j, &c2) in s2.iter().enumerate() {
            let sub = last[j] + if c1 == c2 { 0.0 } else { costs.replace };
            cur[j + 1] = sub.min(cur[j] + ins).min(last[j + 1] + del);
        }
    }
    Ok(cur[n2])
}

/// Unit-cost edit distance.
///
/// ```
/// use fusekit::strings::{encode_str, levenshtein_unit};
///
/// let d = levenshtein_unit(&encode_str("function"), &encode_str("fiction"));
/// assert_eq!(d, 2);
/// ```
pub fn levenshtein_unit(u: &[u32], v: &[u32]) -> u64 {
    levenshtein(u, v, &EditCosts::default()).unwrap() as u64
}

/// Insertions and deletions only (longest-common-subsequence distance).
pub fn lcs_dist(u: &[u32], v: &[u32]) -> u64 {
    let n2 = v.len();
    let mut cur: Vec<u64> = (0..=n2 as u64).collect();
    let mut last = vec![0u64; n2 + 1];
    for &c1 in u {
        std::mem::swap(&mut last, &mut cur);
        cur[0] = last[0] + 1;
        for (j, &c2) in v.iter().enumerate() {
            cur[j + 1] = if c1 == c2 {
                last[j]
            } else {
                (cur[j] + 1).min(last[j + 1] + 1)
            };
        }
    }
    cur[n2]
}

/// Optimal string alignment: adjacent transpositions allowed, but each
/// substring may be edited once.
pub fn osa(u: &[u32], v: &[u32]) -> u64 {
    let (n1, n2) = (u.len(), v.len());
    let mut d = vec![vec![0u64; n2 + 1]; n1 + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i as u64;
    }
    for j in 0..=n2 {
        d[0][j] = j as u64;
    }
    for i in 1..=n1 {
        for j in 1..=n2 {
            let sub = d[i - 1][j - 1] + u64::from(u[i - 1] != v[j - 1]);
            let mut best = sub.min(d[i][j - 1] + 1).min(d[i - 1][j] + 1);
            if i > 1 && j > 1 && u[i - 1] == v[j - 2] && u[i - 2] == v[j - 1] {
                best = best.min(d[i - 2][j - 2] + 1);
            }
            d[i][j] = best;
        }
    }
    d[n1][n2]
}

/// Unrestricted transposition distance: the full inner minimum over earlier
/// matching positions, realized with last-occurrence bookkeeping.
pub fn damerau_levenshtein(u: &[u32], v: &[u32]) -> u64 {
    let (n1, n2) = (u.len(), v.len());
    let inf = (n1 + n2) as u64;
    // d has a sentinel row/column of "infinity" at index 0
    let mut d = vec![vec![inf; n2 + 2]; n1 + 2];
    for i in 0..=n1 {
        d[i + 1][1] = i as u64;
    }
    for j in 0..=n2 {
        d[1][j + 1] = j as u64;
    }
    let mut last_row: BTreeMap<u32, usize> = BTreeMap::new();
    for i in 1..=n1 {
        let mut last_col = 0usize;
        for j in 1..=n2 {
            let i1 = *last_row.get(&v[j - 1]).unwrap_or(&0);
            let j1 = last_col;
            let cost = u64::from(u[i - 1] != v[j - 1]);
            if cost == 0 {
                last_col = j;
            }
            let transpose = if i1 > 0 && j1 > 0 {
                d[i1][j1] + (i - i1 - 1) as u64 + 1 + (j - j1 - 1) as u64
            } else {
                inf
            };
            d[i + 1][j + 1] = (d[i][j] + cost)
                .min(d[i + 1][j] + 1)
                .min(d[i][j + 1] + 1)
                .min(transpose);
        }
        last_row.insert(u[i - 1], i);
    }
    d[n1 + 1][n2 + 1]
}

/// Literal inner-minimum scan of the transposition recurrence; quartic time,
/// used as the oracle for the fast version.
pub fn damerau_levenshtein_brute(u: &[u32], v: &[u32]) -> u64 {
    let (n1, n2) = (u.len(), v.len());
    let inf = (n1 + n2 + 1) as u64;
    let mut d = vec![vec![0u64; n2 + 1]; n1 + 1];
    for (i, row) in d.iter_mut().enumerate() {
        row[0] = i as u64;
    }
    for j in 0..=n2 {
        d[0][j] = j as u64;
    }
    for i in 1..=n1 {
        for j in 1..=n2 {
            let mut best = (d[i - 1][j - 1] + u64::from(u[i - 1] != v[j - 1]))
                .min(d[i][j - 1] + 1)
                .min(d[i - 1][j] + 1);
            let mut trans = inf;
            for ip in 1..i {
                for jp in 1..j {
                    if u[i - 1] == v[jp - 1] && u[ip - 1] == v[j - 1] {
                        let val = d[ip - 1][jp - 1] + (i - ip) as u64 + (j - jp) as u64 - 1;
                        trans = trans.min(val);
                    }
                }
            }
            d[i][j] = best.min(trans);
            best = d[i][j];
            let _ = best;
        }
    }
    d[n1][n2]
}

/// Multiset of q-grams with occurrence counts.
pub fn qgram_profile(u: &[u32], q: usize) -> Result<BTreeMap<Vec<u32>, u64>> {
    if q == 0 {
        return Err(Error::InvalidParameter("q must be >= 1".into()));
    }
    let mut map = BTreeMap::new();
    if u.len() >= q {
        for w in u.windows(q) {
            *map.entry(w.to_vec()).or_insert(0) += 1;
        }
    }
    Ok(map)
}

/// Total count difference over the union of grams.
pub fn qgram_dist(u: &[u32], v: &[u32], q: usize) -> Result<u64> {
    let pu = qgram_profile(u, q)?;
    let pv = qgram_profile(v, q)?;
    let mut total = 0u64;
    for (g, cu) in &pu {
        let cv = pv.get(g).copied().unwrap_or(0);
        total += cu.abs_diff(cv);
    }
    for (g, cv) in &pv {
        if !pu.contains_key(g) {
            total += cv;
        }
    }
    Ok(total)
}

/// One minus the Jaccard index of the q-gram sets.
pub fn jaccard_qgram(u: &[u32], v: &[u32], q: usize) -> Result<f64> {
    if q > u.len().min(v.len()) {
        return Err(Error::InvalidParameter(
            "q must not exceed either string length".into(),
        ));
    }
    let pu = qgram_profile(u, q)?;
    let pv = qgram_profile(v, q)?;
    let mut inter = 0usize;
    for g in pu.keys() {
        if pv.contains_key(g) {
            inter += 1;
        }
    }
    let union = pu.len() + pv.len() - inter;
    Ok(1.0 - inter as f64 / union as f64)
}

/// Occurrence-tagged positions of a string sorted lexicographically by
/// (symbol, occurrence). The third field is the 1-based original position.
pub fn rank_ord_table(u: &[u32]) -> Vec<(u32, u32, usize)> {
    let sigma = {
        let mut idx: Vec<usize> = (0..u.len()).collect();
        idx.sort_by_key(|&i| u[i]); // stable: preserves occurrence order
        idx
    };
    let mut out = Vec::with_capacity(u.len());
    let mut occ: BTreeMap<u32, u32> = BTreeMap::new();
    for &i in &sigma {
        let c = occ.entry(u[i]).or_insert(0);
        *c += 1;
        out.push((u[i], *c, i + 1));
    }
    out
}

/// Footrule-style rank distance via a merge of the two occurrence tables;
/// symbols absent from one string pair against position zero.
pub fn rank_dist(u: &[u32], v: &[u32]) -> u64 {
    let tu = rank_ord_table(u);
    let tv = rank_ord_table(v);
    let mut d = 0u64;
    let (mut iu, mut iv) = (0usize, 0usize);
    while iu < tu.len() && iv < tv.len() {
        let a = (tu[iu].0, tu[iu].1);
        let b = (tv[iv].0, tv[iv].1);
        match a.cmp(&b) {
            std::cmp::Ordering::Equal => {
                d += (tu[iu].2 as i64 - tv[iv].2 as i64).unsigned_abs();
                iu += 1;
                iv += 1;
            }
            std::cmp::Ordering::Less => {
                d += tu[iu].2 as u64;
                iu += 1;
            }
            std::cmp::Ordering::Greater => {
                d += tv[iv].2 as u64;
                iv += 1;
            }
        }
    }
    while iu < tu.len() {
        d += tu[iu].2 as u64;
        iu += 1;
    }
    while iv < tv.len() {
        d += tv[iv].2 as u64;
        iv += 1;
    }
    d
}

/// All solutions of the exact Hamming median: per-position sets of maximal
///-count symbols, one canonical pick, and the minimal total distance.
#[derive(Debug, Clone, PartialEq)]
pub struct HammingMedian {
    pub candidate_sets: Vec<Vec<u32>>,
    pub canonical: SymbolString,
    pub penalty: u64,
}

pub fn hamming_median(strings: &[SymbolString]) -> Result<HammingMedian> {
    if strings.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = strings[0].len();
    if strings.iter().any(|s| s.len() != d) {
        return Err(Error::DimensionMismatch(
            "strings must have equal length".into(),
        ));
    }
    let n = strings.len() as u64;
    let mut candidate_sets = Vec::with_capacity(d);
    let mut canonical = Vec::with_capacity(d);
    let mut penalty = 0u64;
    for i in 0..d {
        let mut counts: BTreeMap<u32, u64> = BTreeMap::new();
        for s in strings {
            *counts.entry(s[i]).or_insert(0) += 1;
        }
        let k = counts.values().copied().max().unwrap();
        let set: Vec<u32> = counts
            .iter()
            .filter(|(_, &c)| c == k)
            .map(|(&sym, _)| sym)
            .collect();
        canonical.push(set[0]); // BTreeMap iterates keys ascending
        candidate_sets.push(set);
        penalty += n - k;
    }
    Ok(HammingMedian {
        candidate_sets,
        canonical,
        penalty,
    })
}

/// Tuning knobs of the genetic searches, mirroring the reference listing's
/// defaults: population `8 * length`, 2000 iterations, Poisson mutations at
/// rate 0.001 per symbol, cubic fitness-proportionate selection.
#[derive(Debug, Clone, Copy)]
pub struct GaParams {
    pub population: Option<usize>,
    pub iterations: usize,
    pub mutation_rate: f64,
}

impl Default for GaParams {
    fn default() -> Self {
        GaParams {
            population: None,
            iterations: 2000,
            mutation_rate: 0.001,
        }
    }
}

fn sample_poisson<R: Rng>(lambda: f64, rng: &mut R) -> usize {
    // Knuth's method; lambda stays small here
    let l = (-lambda).exp();
    let mut k = 0usize;
    let mut p = 1.0;
    loop {
        p *= rng.gen::<f64>();
        if p <= l {
            return k;
        }
        k += 1;
        if k > 10_000 {
            return k;
        }
    }
}

/// Fitness-proportionate pick of an index given cubic weights.
fn select_index<R: Rng>(weights: &[f64], total: f64, rng: &mut R) -> usize {
    let mut t = rng.gen_range(0.0..total);
    for (i, w) in weights.iter().enumerate() {
        if t < *w {
            return i;
        }
        t -= w;
    }
    weights.len() - 1
}

/// Approximate closest (center) string under the Hamming distance by a
/// genetic search with uniform crossover. Deterministic for a fixed seed.
pub fn closest_string_ga(
    strings: &[SymbolString],
    params: GaParams,
    seed: u64,
) -> Result<(SymbolString, u64)> {
    if strings.is_empty() {
        return Err(Error::EmptyInput);
    }
    let d = strings[0].len();
    if strings.iter().any(|s| s.len() != d) {
        return Err(Error::DimensionMismatch(
            "strings must have equal length".into(),
        ));
    }
    if d == 0 {
        return Ok((vec![], 0));
    }
    let alphabet: Vec<u32> = {
        let mut set: Vec<u32> = strings.iter().flatten().copied().collect();
        set.sort_unstable();
        set.dedup();
        set
    };
    let k = params.population.unwrap_or(8 * d).max(2);
    let mut rng = rng_from_seed(seed);
    let fitness =
        |p: &SymbolString| -> u64 { strings.iter().map(|s| hamming_finite(s, p)).max().unwrap() };

    // initial population: random strings with inputs spliced in
    let mut pop: Vec<SymbolString> = (0..k)
        .map(|_| {
            (0..d)
                .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
                .collect()
        })
        .collect();
    for (slot, s) in pop.iter_mut().zip(strings.iter()) {
        *slot = s.clone();
    }
    let mut fit: Vec<u64> = pop.iter().map(&fitness).collect();
    let mut best = pop[0].clone();
    let mut best_fit = fit[0];
    for (p, &f) in pop.iter().zip(&fit) {
        if f < best_fit {
            best_fit = f;
            best = p.clone();
        }
    }

    let lambda_mut = (k as f64 * d as f64 * params.mutation_rate).max(1.0);
    for _ in 0..params.iterations {
        // cubic fitness-proportionate selection weights
        let weights: Vec<f64> = fit
            .iter()
            .map(|&f| ((d as f64 - f as f64 + 1.0).max(0.0)).powi(3))
            .collect();
        let total: f64 = weights.iter().sum();
        let mut next: Vec<SymbolString> = Vec::with_capacity(k);
        for _ in 0..k {
            let a = &pop[select_index(&weights, total, &mut rng)];
            let b = &pop[select_index(&weights, total, &mut rng)];
            // uniform crossover: half the positions come from the second
            // parent
            let mut child = a.clone();
            for _ in 0..d / 2 {
                let pos = rng.gen_range(0..d);
                child[pos] = b[pos];
            }
            next.push(child);
        }
        // Poisson-distributed number of point mutations over the population
        let muts = sample_poisson(lambda_mut, &mut rng).min(k * d);
        for _ in 0..muts {
            let who = rng.gen_range(0..k);
            let pos = rng.gen_range(0..d);
            next[who][pos] = alphabet[rng.gen_range(0..alphabet.len())];
        }
        pop = next;
        fit = pop.iter().map(&fitness).collect();
        for (p, &f) in pop.iter().zip(&fit) {
            if f < best_fit {
                best_fit = f;
                best = p.clone();
            }
        }
    }
    Ok((best, best_fit))
}

/// Edit-distance centroid of two strings: a string at distance
/// `floor(d/2)` from the first and `ceil(d/2)` from the second. Inputs are
/// ordered lexicographically first so the result is symmetric.
pub fn lev_centroid2(u: &[u32], v: &[u32]) -> SymbolString {
    let (s1, s2) = if u <= v { (u, v) } else { (v, u) };
    let (n1, n2) = (s1.len(), s2.len());
    let mut dmat = vec![vec![0u32; n2 + 1]; n1 + 1];
    let mut trace = vec![vec![0u8; n2 + 1]; n1 + 1]; // bit 1 sub, 2 ins, 4 del
    for i in 1..=n1 {
        dmat[i][0] = i as u32;
        trace[i][0] = 4;
    }
    for j in 1..=n2 {
        dmat[0][j] = j as u32;
        trace[0][j] = 2;
    }
    for i in 1..=n1 {
        for j in 1..=n2 {
            if s1[i - 1] == s2[j - 1] {
                dmat[i][j] = dmat[i - 1][j - 1];
                trace[i][j] = 0;
            } else {
                let m1 = dmat[i - 1][j - 1] + 1;
                let m2 = dmat[i][j - 1] + 1;
                let m3 = dmat[i - 1][j] + 1;
                let best = m1.min(m2).min(m3);
                dmat[i][j] = best;
                let mut t = 0u8;
                if best == m1 {
                    t |= 1;
                }
                if best == m2 {
                    t |= 2;
                }
                if best == m3 {
                    t |= 4;
                }
                trace[i][j] = t;
            }
        }
    }
    let maxd = dmat[n1][n2] / 2;
    if maxd == 0 {
        return s1.to_vec();
    }
    // walk back from the corner, applying edits to a copy of s1 until half
    // the distance is spent; cur indexes the element of `out` aligned with
    // position x of s1
    let mut out: Vec<u32> = s1.to_vec();
    let mut x = n1;
    let mut y = n2;
    let mut cur = n1 as i64 - 1;
    let mut spent = 0u32;
    while spent < maxd {
        let t = trace[x][y];
        spent += u32::from(t != 0);
        if t == 0 {
            x -= 1;
            y -= 1;
            cur -= 1;
        } else if t & 1 != 0 {
            out[cur as usize] = s2[y - 1];
            x -= 1;
            y -= 1;
            cur -= 1;
        } else if t & 2 != 0 && (t & 4 == 0 || out.len() < n1.max(n2)) {
            out.insert((cur + 1) as usize, s2[y - 1]);
            y -= 1;
        } else {
            out.remove(cur as usize);
            x -= 1;
            cur -= 1;
        }
    }
    out
}

/// Result of a genetic median-string search.
#[derive(Debug, Clone)]
pub struct MedianString {
    pub string: SymbolString,
    pub penalty: f64,
}

/// Approximate 1-median under the edit distance. Crossover is the two-string
/// centroid (intermediate recombination); mutation applies one random edit.
/// The initial population mixes the inputs and the set medoid, half and
/// half, with random strings.
pub fn median_string_ga(
    strings: &[SymbolString],
    params: GaParams,
    seed: u64,
) -> Result<MedianString> {
    if strings.is_empty() {
        return Err(Error::EmptyInput);
    }
    let alphabet: Vec<u32> = {
        let mut set: Vec<u32> = strings.iter().flatten().copied().collect();
        set.sort_unstable();
        set.dedup();
        if set.is_empty() {
            set.push(0);
        }
        set
    };
    let penalty =
        |p: &SymbolString| -> f64 { strings.iter().map(|s| levenshtein_unit(s, p) as f64).sum() };
    let max_len = strings.iter().map(|s| s.len()).max().unwrap();
    let k = params.population.unwrap_or((4 * max_len).max(8)).max(2);
    let mut rng = rng_from_seed(seed);

    // set medoid over the input strings
    let medoid_idx = (0..strings.len())
        .min_by(|&a, &b| {
            penalty(&strings[a])
                .partial_cmp(&penalty(&strings[b]))
                .unwrap()
        })
        .unwrap();
    let mut pop: Vec<SymbolString> = Vec::with_capacity(k);
    pop.push(strings[medoid_idx].clone());
    for s in strings {
        if pop.len() >= k / 2 {
            break;
        }
        pop.push(s.clone());
    }
    while pop.len() < k {
        let len = rng.gen_range(0..=max_len.max(1));
        pop.push(
            (0..len)
                .map(|_| alphabet[rng.gen_range(0..alphabet.len())])
                .collect(),
        );
    }

    let mutate = |p: &SymbolString, rng: &mut ChaCha8Rng| -> SymbolString {
        let mut q = p.clone();
        match rng.gen_range(0..3) {
            0 => {
                // insertion
                let pos = rng.gen_range(0..=q.len());
                q.insert(pos, alphabet[rng.gen_range(0..alphabet.len())]);
            }
            1 => {
                // removal
                if !q.is_empty() {
                    let pos = rng.gen_range(0..q.len());
                    q.remove(pos);
                }
            }
            _ => {
                // replacement
                if !q.is_empty() {
                    let pos = rng.gen_range(0..q.len());
                    q[pos] = alphabet[rng.gen_range(0..alphabet.len())];
                }
            }
        }
        q
    };

    let mut fit: Vec<f64> = pop.iter().map(&penalty).collect();
    let mut best_idx = 0;
    for (i, f) in fit.iter().enumerate() {
        if *f < fit[best_idx] {
            best_idx = i;
        }
    }
    let mut best = pop[best_idx].clone();
    let mut best_fit = fit[best_idx];

    let worst_possible: f64 = strings
        .iter()
        .map(|s| (s.len() + max_len) as f64)
        .sum::<f64>()
        + 1.0;
    for _ in 0..params.iterations {
        let weights: Vec<f64> = fit
            .iter()
            .map(|&f| ((worst_possible - f) / worst_possible).powi(3))
            .collect();
        let total: f64 = weights.iter().sum();
        let mut next: Vec<SymbolString> = Vec::with_capacity(k);
        next.push(best.clone()); // elitism keeps the incumbent
        while next.len() < k {
            let a = &pop[select_index(&weights, total, &mut rng)];
            let b = &pop[select_index(&weights, total, &mut rng)];
            let mut child = lev_centroid2(a, b);
            // at least one random edit keeps the search moving
            let edits =
                1 + sample_poisson(params.mutation_rate * child.len().max(1) as f64, &mut rng);
            for _ in 0..edits {
                child = mutate(&child, &mut rng);
            }
            next.push(child);
        }
        pop = next;
        fit = pop.iter().map(&penalty).collect();
        for (p, &f) in pop.iter().zip(&fit) {
            if f < best_fit {
                best_fit = f;
                best = p.clone();
            }
        }
    }
    Ok(MedianString {
        string: best,
        penalty: best_fit,
    })
}

/// Text helpers for the integer-alphabet interface.
pub fn encode_str(s: &str) -> SymbolString {
    s.chars().map(|c| c as u32).collect()
}

pub fn decode_string(s: &[u32]) -> String {
    s.iter().filter_map(|&c| char::from_u32(c)).collect()
}
