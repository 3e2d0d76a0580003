//! Timing probes for the two dominant computations. Ignored by default;
//! run with `cargo test --release -p antipodal-core -- --ignored --nocapture`.

use std::time::Instant;

use antipodal_core::harmonic::characteristic_matrix;
use antipodal_core::leech::{construct_tight7, generate_leech_min};
use antipodal_core::verify::{inner_histogram, sign_kernel_search, SignSearchOptions};

#[test]
#[ignore = "timing probe"]
fn time_leech_histogram() {
    let t0 = Instant::now();
    let leech = generate_leech_min().unwrap();
    println!("leech generation: {:?}", t0.elapsed());
    let t1 = Instant::now();
    let hist = inner_histogram(&leech.points, None).unwrap();
    println!("full histogram: {:?} ({} classes)", t1.elapsed(), hist.counts.len());
    let total: u128 = hist.counts.values().map(|&c| c as u128).sum();
    assert_eq!(total, 196560u128 * 196560);
    let mut keys: Vec<i64> = hist.counts.keys().copied().collect();
    keys.sort();
    println!("raw values: {keys:?}");
}

#[test]
#[ignore = "timing probe"]
fn time_tight7_index3() {
    let leech = generate_leech_min().unwrap();
    let t0 = Instant::now();
    let t7 = construct_tight7(&leech).unwrap();
    println!("tight7 construction: {:?}", t0.elapsed());
    let sel = antipodal_core::points::HalfSelection::canonical(&t7);
    let t1 = Instant::now();
    let h3 = characteristic_matrix(&t7, Some(&sel), 3).unwrap();
    println!("H3 build ({}x{}): {:?}", h3.rows(), h3.cols(), t1.elapsed());
    let t2 = Instant::now();
    let h1 = characteristic_matrix(&t7, Some(&sel), 1).unwrap();
    let res = sign_kernel_search(&h3, Some(&h1), SignSearchOptions::default()).unwrap();
    println!(
        "sign search: {:?} status={:?} rank={:?} k={:?} enum={} notes={}",
        t2.elapsed(),
        res.status,
        res.rank,
        res.kernel_dim,
        res.enumerated,
        res.notes
    );
}
