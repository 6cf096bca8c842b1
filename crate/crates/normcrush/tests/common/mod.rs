#![allow(dead_code)]

use normcrush::cellcx::CellComplex;
use normcrush::normal::{enumerate_bounded, NormalVector, DEFAULT_WORK_CAP};
use normcrush::tri_core::{Perm4, Triangulation};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use std::path::PathBuf;

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

pub fn corpus_path(name: &str) -> PathBuf {
    corpus_dir().join(name)
}

pub fn load_tri(name: &str) -> Triangulation {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    Triangulation::from_json(&text).unwrap()
}

pub fn load_cc(name: &str) -> CellComplex {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    CellComplex::from_json(&text).unwrap()
}

pub fn load_ns(name: &str) -> NormalVector {
    let text = std::fs::read_to_string(corpus_path(name)).unwrap();
    NormalVector::from_json(&text).unwrap()
}

/// Every `.tri` file in the corpus, by name.
pub fn corpus_triangulations() -> Vec<(String, Triangulation)> {
    let mut names: Vec<String> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .filter_map(|e| e.ok())
        .map(|e| e.file_name().to_string_lossy().into_owned())
        .filter(|n| n.ends_with(".tri"))
        .collect();
    names.sort();
    names.into_iter().map(|n| (n.clone(), load_tri(&n))).collect()
}

pub const PILLOWS: [&str; 7] = [
    "tri_pillow_s3.cc",
    "tri_pillow_l31.cc",
    "tri_pillow_invalid.cc",
    "bigon_pillow_s3.cc",
    "bigon_pillow_rp3.cc",
    "bigon_pillow_ideal.cc",
    "bigon_pillow_invalid.cc",
];

/// Non-trivial admissible vectors with coordinates at most `k`.
pub fn nontrivial_vectors(t: &Triangulation, k: u64) -> Vec<NormalVector> {
    enumerate_bounded(t, k, DEFAULT_WORK_CAP).unwrap().into_iter().filter(|v| !v.is_trivial()).collect()
}

/// A random closed triangulation: the 4n faces paired uniformly, each pair
/// glued by a random one of the six compatible permutations.
pub fn random_closed(n: usize, seed: u64) -> Triangulation {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut faces: Vec<(usize, usize)> = (0..n).flat_map(|t| (0..4).map(move |f| (t, f))).collect();
    faces.shuffle(&mut rng);
    let mut t = Triangulation::new(n);
    let perms = Perm4::all();
    for pair in faces.chunks(2) {
        let ((a, x), (b, y)) = (pair[0], pair[1]);
        let choices: Vec<Perm4> = perms.iter().copied().filter(|p| p.apply(x) == y).collect();
        let p = choices[rng.gen_range(0..choices.len())];
        t.glue(a, x, b, p).unwrap();
    }
    t
}
