//! Cross-module workflows through the public API only.

use fusekit::characteristics::{entropy, orness, OrnessMethod};
use fusekit::exemplar::{exemplar_exact, FoldSpec, SemimetricSpace};
use fusekit::fitting::{fit_wam_lse, fit_errors, FitData};
use fusekit::integrals::{choquet, MonotoneMeasure};
use fusekit::means::{aggregate, owa, MeanSpec};
use fusekit::multivariate::{
    medoid, tukey_depth, tukey_median_2d, MetricSpec, PointCloud, TukeyMode,
};
use fusekit::strings::{encode_str, hamming_median, levenshtein_unit, median_string_ga, GaParams};
use fusekit::{RealVector, WeightVector};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fitted OWA weights feed directly into the OWA evaluator, the Choquet
/// integral with the induced symmetric measure, and the orness/entropy
/// characteristics — four views of one model.
#[test]
fn fitted_owa_weights_flow_through_the_stack() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let n = 4;
    // synthesize exemplars from a hidden OWA model
    let w_true = WeightVector::new(vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let columns: Vec<Vec<f64>> = (0..40)
        .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
        .collect();
    let y: Vec<f64> = columns
        .iter()
        .map(|c| owa(&w_true, &RealVector::new(c.clone()).unwrap()).unwrap())
        .collect();
    // sorting exemplars turns weighted-mean fitting into OWA fitting
    let data = FitData::new(columns.clone(), y).unwrap().sorted_columns();
    let w_fit = fit_wam_lse(&data).unwrap();
    assert!(fit_errors(&data, w_fit.weights()).l2 < 1e-8);
    for (a, b) in w_fit.weights().iter().zip(w_true.weights()) {
        assert!((a - b).abs() < 1e-6);
    }

    // the same weights induce a symmetric measure whose Choquet integral
    // reproduces the OWA on fresh inputs
    let mut phi = vec![0.0; n + 1];
    for k in 1..=n {
        phi[k] = phi[k - 1] + w_fit.weights()[n - k];
    }
    let mu = MonotoneMeasure::symmetric(n, phi).unwrap();
    for _ in 0..50 {
        let x = RealVector::new((0..n).map(|_| rng.gen_range(0.0..1.0)).collect()).unwrap();
        let a = owa(&w_fit, &x).unwrap();
        let b = choquet(&mu, &x).unwrap();
        assert!((a - b).abs() < 1e-9);
    }

    // orness of the recovered weights matches the generator's
    let o_fit = orness(&|_: &[f64]| 0.0, n, &OrnessMethod::OwaExact(w_fit.clone()))
        .unwrap()
        .value;
    let o_true = orness(&|_: &[f64]| 0.0, n, &OrnessMethod::OwaExact(w_true.clone()))
        .unwrap()
        .value;
    assert!((o_fit - o_true).abs() < 1e-6);
    assert!((entropy(&w_fit) - entropy(&w_true)).abs() < 1e-5);
}

/// The generic exemplar search, the dedicated point-cloud medoid, and the
/// string consensus routines agree where their domains overlap.
#[test]
fn exemplar_search_agrees_with_domain_specific_medoids() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let pts: Vec<Vec<f64>> = (0..40)
        .map(|_| (0..3).map(|_| rng.gen_range(-2.0..2.0)).collect())
        .collect();
    let cloud = PointCloud::from_columns(&pts).unwrap();
    let direct = medoid(&cloud, &MetricSpec::Euclidean);
    let space = SemimetricSpace::new(pts.len(), |i, j| {
        pts[i]
            .iter()
            .zip(&pts[j])
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    })
    .unwrap();
    space.validate(3).unwrap();
    let generic = exemplar_exact(&space, FoldSpec::Sum);
    assert_eq!(direct, generic.index);

    // string medoid as an exemplar search over edit distances, and the
    // genetic 1-median never does worse than that medoid
    let words: Vec<Vec<u32>> = ["karolin", "kathrin", "kerstin", "karsten"]
        .iter()
        .map(|w| encode_str(w))
        .collect();
    let wspace =
        SemimetricSpace::new(words.len(), |i, j| levenshtein_unit(&words[i], &words[j]) as f64)
            .unwrap();
    let med = exemplar_exact(&wspace, FoldSpec::Sum);
    let ga = median_string_ga(&words, GaParams { iterations: 300, ..Default::default() }, 5)
        .unwrap();
    assert!(ga.penalty <= med.penalty + 1e-9);
}

/// Deepest-point summaries stay consistent with raw depth queries and with
/// the exact consensus of equal-length strings.
#[test]
fn consensus_and_depth_consistency() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let pts: Vec<Vec<f64>> = (0..12)
        .map(|_| (0..2).map(|_| rng.gen_range(-1.0..1.0)).collect())
        .collect();
    let cloud = PointCloud::from_columns(&pts).unwrap();
    let median = tukey_median_2d(&cloud).unwrap();
    // no input point is deeper than the returned deepest point
    for p in cloud.points() {
        let d = tukey_depth(p, &cloud, TukeyMode::Exact2d).unwrap();
        assert!(d <= median.depth);
    }
    // an aggregated scalar view: the median of coordinate medians lies in
    // the bounding box
    for j in 0..2 {
        let row = RealVector::new(cloud.coordinate_row(j)).unwrap();
        let med = aggregate(MeanSpec::Median, &row).unwrap();
        let lo = aggregate(MeanSpec::Min, &row).unwrap();
        let hi = aggregate(MeanSpec::Max, &row).unwrap();
        assert!(lo <= med && med <= hi);
    }

    // exact Hamming consensus beats every input string, and its penalty is
    // reproducible through the generic distance machinery
    let strings: Vec<Vec<u32>> =
        vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 5, 3], vec![6, 2, 3]];
    let med = hamming_median(&strings).unwrap();
    let total = |cand: &[u32]| -> u64 {
        strings
            .iter()
            .map(|s| s.iter().zip(cand).filter(|(a, b)| a != b).count() as u64)
            .sum()
    };
    assert_eq!(total(&med.canonical), med.penalty);
    for s in &strings {
        assert!(med.penalty <= total(s));
    }
}
