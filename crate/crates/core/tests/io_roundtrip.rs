use std::fs;
use std::path::Path;
use std::sync::Arc;

use homcat::algebra::Preset;
use homcat::ar::{almost_split_sequence, module_corpus_terms, Category, CorpusOptions, Term};
use homcat::error::Error;
use homcat::io::{to_pretty, Loader};
use homcat::module::{is_isomorphic, Module, Side};
use homcat::morph::MorphObject;
use proptest::prelude::*;
use serde_json::Value;

fn data(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

#[test]
fn sample_files_load() {
    let mut l = Loader::new();
    let k = l.module_file(&data("k_over_r2.json")).unwrap();
    let reg = l.module_file(&data("r2_regular.json")).unwrap();
    assert!(Arc::ptr_eq(k.algebra(), reg.algebra()), "one ring shared through the cache");
    assert!(reg.is_projective());
    let x = l.morph_file(&data("f_plus_proj.json")).unwrap();
    assert_eq!((x.a().dim(), x.b().dim()), (3, 4));
    let seq = l.sequence_file(&data("split_seq.json")).unwrap();
    assert_eq!(seq.category, Category::R);
    let corpus = l.corpus_dir(&data("presets/r2")).unwrap();
    assert_eq!(corpus.modules().count(), 2);
    assert!(corpus.objects().count() >= 5);
}

#[test]
fn schema_errors_are_input_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("extra.json", r#"{"ring": "preset:truncated_poly,p=2,n=2", "dim": 1, "side": "right", "action": [[[1]], [[0]]], "colour": 1}"#),
        ("side.json", r#"{"ring": "preset:truncated_poly,p=2,n=2", "dim": 1, "side": "up", "action": [[[1]], [[0]]]}"#),
        ("shape.json", r#"{"ring": "preset:truncated_poly,p=2,n=2", "dim": 2, "side": "right", "action": [[[1]], [[0]]]}"#),
        ("count.json", r#"{"ring": "preset:truncated_poly,p=2,n=2", "dim": 1, "side": "right", "action": [[[1]]]}"#),
        ("notamodule.json", r#"{"ring": "preset:truncated_poly,p=2,n=2", "dim": 1, "side": "right", "action": [[[1]], [[1]]]}"#),
        ("prime.json", r#"{"ring": {"p": 4, "dim": 1, "basis": ["1"], "unit": [1], "mul": [[[1]]]}, "dim": 0, "side": "right", "action": [[]]}"#),
        ("syntax.json", r#"{"ring": "#),
    ];
    for (name, text) in cases {
        let path = dir.path().join(name);
        fs::write(&path, text).unwrap();
        let err = Loader::new().module_file(&path).unwrap_err();
        assert!(matches!(err, Error::Input(_)), "{name}: {err}");
    }
}

#[test]
fn ring_paths_resolve_relative_to_the_file() {
    let dir = tempfile::tempdir().unwrap();
    fs::create_dir(dir.path().join("rings")).unwrap();
    fs::copy(data("r2.json"), dir.path().join("rings/r2.json")).unwrap();
    fs::write(
        dir.path().join("k.json"),
        r#"{"ring": "rings/r2.json", "dim": 1, "side": "right", "action": [[[1]], [[0]]]}"#,
    )
    .unwrap();
    let m = Loader::new().module_file(&dir.path().join("k.json")).unwrap();
    assert_eq!(m.algebra().dim(), 2);
}

#[test]
fn written_sequences_read_back() {
    let r = Preset::TruncatedPoly { p: 2, n: 3 }.build().unwrap();
    let corpus = module_corpus_terms(&r, &CorpusOptions::default()).unwrap();
    let k = Module::top_of_regular(&r, Side::Right);
    let seq = almost_split_sequence(&Term::Module(k), Category::R, Some(&corpus)).unwrap();
    let l = Loader::new();
    let text = to_pretty(&l.sequence_value(&seq));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.json");
    fs::write(&path, &text).unwrap();
    let back = Loader::new().sequence_file(&path).unwrap();
    assert_eq!(back.incl, seq.incl);
    assert_eq!(back.proj, seq.proj);
    assert_eq!(back.report, seq.report);
    assert!(is_isomorphic(back.middle.module(), seq.middle.module()).unwrap());
}

#[test]
fn pretty_printer_is_valid_json() {
    let v: Value = serde_json::from_str(r#"{"b": [[1, 2], [3, 4]], "a": {"s": "x,y", "e": [], "n": null}}"#).unwrap();
    let text = to_pretty(&v);
    assert_eq!(serde_json::from_str::<Value>(&text).unwrap(), v);
    assert!(text.contains("[[1, 2], [3, 4]]"));
    assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap(), "keys are sorted");
}

fn small_module() -> impl Strategy<Value = Module> {
    (0usize..3, prop::collection::vec(0u32..2, 0..3)).prop_map(|(kind, gens)| {
        let r = Preset::TruncatedPoly { p: 2, n: 3 }.build().unwrap();
        let elems: Vec<Vec<u32>> = gens.iter().map(|&g| {
            let mut v = vec![0; 3];
            v[1 + g as usize] = 1;
            v
        }).collect();
        let m = Module::regular_quotient(&r, Side::Right, &elems);
        match kind {
            0 => m,
            1 => m.sum(&Module::top_of_regular(&r, Side::Right)).unwrap(),
            _ => m.sum(&Module::regular(&r, Side::Right)).unwrap(),
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn modules_survive_a_write_and_read(m in small_module(), seed in 0u64..1000) {
        let (m, _) = m.random_conjugate(seed);
        let l = Loader::new();
        let text = to_pretty(&l.module_value(&m, true));
        let back = Loader::new().module_str(&text).unwrap();
        prop_assert_eq!(back.action(), m.action());
    }

    #[test]
    fn objects_survive_a_write_and_read(m in small_module(), n in small_module(), pick in 0usize..64) {
        let maps = homcat::module::hom_maps(&m, &n).unwrap();
        prop_assume!(!maps.is_empty());
        let f = &maps[pick % maps.len()];
        let x = MorphObject::from_map(f).unwrap();
        let text = to_pretty(&Loader::new().morph_value(&x, true));
        let back = Loader::new().morph_str(&text).unwrap();
        prop_assert_eq!(back.f(), x.f());
        prop_assert!(back.is_isomorphic(&x).unwrap());
    }
}
