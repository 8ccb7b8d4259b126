use std::sync::Arc;

use super::*;
use crate::algebra::{Algebra, ObjSide, Preset};
use crate::module::{hom_maps, is_isomorphic, Module, Side, TauDirection};
use crate::morph::{cok_object, red, MorphObject, RedContext};

fn trunc(n: usize) -> Arc<Algebra> {
    Preset::TruncatedPoly { p: 2, n }.build().unwrap()
}

fn k(r: &Arc<Algebra>) -> Module {
    Module::top_of_regular(r, Side::Right)
}

fn reg(r: &Arc<Algebra>) -> Module {
    Module::regular(r, Side::Right)
}

fn cyc(r: &Arc<Algebra>, s: usize) -> Module {
    let mut x = vec![0; r.dim()];
    x[s] = 1;
    Module::regular_quotient(r, Side::Right, &[x])
}

fn mono(a: &Module, b: &Module) -> MorphObject {
    let h = hom_maps(a, b).unwrap().into_iter().find(|h| h.is_injective()).unwrap();
    MorphObject::from_map(&h).unwrap()
}

fn objects(r: &Arc<Algebra>) -> Corpus {
    ar_corpus(r, &CorpusOptions::default()).unwrap()
}

fn modules(r: &Arc<Algebra>) -> Corpus {
    module_corpus_terms(r, &CorpusOptions::default()).unwrap()
}

fn seq_r(r: &Arc<Algebra>, end: &Module) -> ARSequence {
    almost_split_sequence(&Term::Module(end.clone()), Category::R, Some(&modules(r))).unwrap()
}

#[test]
fn tau_h_of_simple_target() {
    let r2 = trunc(2);
    let t = tau_morphism(&MorphObject::zero_to(&k(&r2)), Category::H, TauDirection::Forward).unwrap();
    assert!(t.object.is_isomorphic(&MorphObject::identity(&k(&r2))).unwrap());
    assert!(t.checks_agree());
    assert_eq!(t.cross_checks.len(), 2);
}

#[test]
fn tau_g_of_identity_is_envelope() {
    let r3 = trunc(3);
    let t = tau_morphism(&MorphObject::identity(&k(&r3)), Category::G, TauDirection::Forward).unwrap();
    assert!(t.object.is_isomorphic(&mono(&k(&r3), &reg(&r3))).unwrap());
}

#[test]
fn tau_rejects_projectives() {
    let r2 = trunc(2);
    let id = MorphObject::identity(&reg(&r2));
    for cat in [Category::H, Category::G, Category::E] {
        assert!(tau_morphism(&id, cat, TauDirection::Forward).is_err());
    }
    let sz = Preset::SquareZeroPlane { p: 2 }.build().unwrap();
    assert!(tau_morphism(&MorphObject::zero_to(&k(&sz)), Category::H, TauDirection::Forward).is_err());
}

#[test]
fn sequence_over_r2() {
    let r2 = trunc(2);
    let s = seq_r(&r2, &k(&r2));
    assert!(is_isomorphic(s.left.module(), &k(&r2)).unwrap());
    assert!(is_isomorphic(s.middle.module(), &reg(&r2)).unwrap());
    assert!(s.report.unwrap().all_ok());
}

#[test]
fn sequence_over_r3() {
    let r3 = trunc(3);
    let v2 = cyc(&r3, 2);
    let s = seq_r(&r3, &v2);
    assert!(is_isomorphic(s.left.module(), &v2).unwrap());
    assert!(is_isomorphic(s.middle.module(), &k(&r3).sum(&reg(&r3)).unwrap()).unwrap());
    let rep = s.report.unwrap();
    assert!(rep.all_ok(), "{rep:?}");
    assert!(rep.checked >= 2);
}

#[test]
fn sequence_in_g_ending_at_simple_target() {
    let r2 = trunc(2);
    let end = Term::Morph(MorphObject::zero_to(&k(&r2)));
    let s = almost_split_sequence(&end, Category::G, Some(&objects(&r2))).unwrap();
    let left = s.left.as_morph().unwrap();
    assert!(left.is_isomorphic(&MorphObject::identity(&k(&r2))).unwrap());
    assert!(s.middle.as_morph().unwrap().is_isomorphic(&mono(&k(&r2), &reg(&r2))).unwrap());
    assert!(s.report.unwrap().all_ok());
}

#[test]
fn split_sequence_is_not_almost_split() {
    let r2 = trunc(2);
    let (a, c) = (k(&r2), reg(&r2));
    let mid = a.sum(&c).unwrap();
    let p = 2;
    let incl = Mat::identity(p, 1).vstack(&Mat::zeros(p, 2, 1));
    let proj = Mat::zeros(p, 2, 1).hstack(&Mat::identity(p, 2));
    let s = ARSequence::new(Category::R, Term::Module(a), Term::Module(mid), Term::Module(c), incl, proj).unwrap();
    let rep = verify_almost_split(&s, &modules(&r2)).unwrap();
    assert!(!rep.non_split);
    assert!(!rep.all_ok());
}

#[test]
fn inexact_sequence_is_rejected() {
    let r2 = trunc(2);
    let kk = k(&r2);
    let mid = kk.sum(&kk).unwrap();
    let incl = Mat::identity(2, 1).vstack(&Mat::zeros(2, 1, 1));
    let proj = Mat::zeros(2, 1, 1).hstack(&Mat::identity(2, 1));
    let s = ARSequence::new(Category::R, Term::Module(kk.clone()), Term::Module(mid), Term::Module(kk), incl, proj);
    assert!(s.is_ok());
    let s = s.unwrap();
    assert!(!verify_almost_split(&s, &modules(&r2)).unwrap().non_split);
    let bad = ARSequence::new(
        Category::R,
        Term::Module(k(&r2)),
        Term::Module(k(&r2).sum(&k(&r2)).unwrap()),
        Term::Module(reg(&r2)),
        Mat::identity(2, 2).block(0, 0, 2, 1),
        Mat::zeros(2, 2, 2),
    );
    assert!(bad.is_err());
}

#[test]
fn families_over_r2_and_r3() {
    for n in [2, 3] {
        let r = trunc(n);
        let objs = objects(&r);
        let s = seq_r(&r, &k(&r));
        for which in [Family::I, Family::II, Family::III, Family::IV] {
            for &cat in which.categories() {
                let f = explicit_family(&s, which, Some(cat), Some(&objs)).unwrap();
                let rep = f.report.clone().unwrap();
                assert!(rep.all_ok(), "n={n} family {} in {cat}: {rep:?}", which.name());
            }
        }
    }
}

#[test]
fn family_left_terms() {
    let r3 = trunc(3);
    let s = seq_r(&r3, &k(&r3));
    let two = explicit_family(&s, Family::II, None, None).unwrap();
    assert!(two.left.as_morph().unwrap().is_isomorphic(&mono(&k(&r3), &reg(&r3))).unwrap());
    let four = explicit_family(&s, Family::IV, None, None).unwrap();
    let v2 = cyc(&r3, 2);
    let epi = hom_maps(&reg(&r3), &v2).unwrap().into_iter().find(|h| h.is_surjective()).unwrap();
    assert!(four.left.as_morph().unwrap().is_isomorphic(&MorphObject::from_map(&epi).unwrap()).unwrap());
}

#[test]
fn cokernel_transport_of_family_one() {
    let r2 = trunc(2);
    let s = seq_r(&r2, &k(&r2));
    let one = explicit_family(&s, Family::I, None, None).unwrap();
    let three = explicit_family(&s, Family::III, None, None).unwrap();
    let moved = cok_sequence(&one).unwrap();
    for (x, y) in [(&moved.left, &three.left), (&moved.middle, &three.middle), (&moved.right, &three.right)] {
        assert!(x.as_morph().unwrap().is_isomorphic(y.as_morph().unwrap()).unwrap());
    }
    let back = ker_sequence(&moved).unwrap();
    assert!(back.middle.as_morph().unwrap().is_isomorphic(one.middle.as_morph().unwrap()).unwrap());
}

#[test]
fn unverified_input_is_refused() {
    let r2 = trunc(2);
    let s = almost_split_sequence(&Term::Module(k(&r2)), Category::R, None).unwrap();
    assert!(explicit_family(&s, Family::I, None, None).is_err());
}

#[test]
fn classical_anchor_examples() {
    let r2 = trunc(2);
    assert!(classical_cross_check(&MorphObject::zero_to(&k(&r2))).unwrap());
    assert!(classical_cross_check(&mono(&k(&r2), &reg(&r2))).unwrap());
    assert!(classical_cross_check(&MorphObject::identity(&reg(&r2))).unwrap());
}

#[test]
fn round_trips_on_corpus() {
    let r2 = trunc(2);
    for x in objects(&r2).objects() {
        for cat in [Category::H, Category::G, Category::E] {
            if !Term::Morph(x.clone()).in_category(cat) {
                continue;
            }
            let ctx = if cat == Category::E { RedContext::E } else { RedContext::MOrG };
            let target = red(x, ctx).unwrap();
            if !is_projective_in(x, cat).unwrap() {
                let t = tau_morphism(x, cat, TauDirection::Forward).unwrap();
                assert!(t.checks_agree(), "{cat} {x:?}");
                let back = tau_morphism(&t.object, cat, TauDirection::Inverse).unwrap();
                assert!(back.object.is_isomorphic(&target).unwrap(), "{cat}: inverse after forward");
            }
            if !is_injective_in(x, cat).unwrap() {
                let t = tau_morphism(x, cat, TauDirection::Inverse).unwrap();
                assert!(t.checks_agree());
                let back = tau_morphism(&t.object, cat, TauDirection::Forward).unwrap();
                // In H the injectives are the ones stripped on this side.
                let target = if cat == Category::H { red(x, RedContext::E).unwrap() } else { target.clone() };
                assert!(back.object.is_isomorphic(&target).unwrap(), "{cat}: forward after inverse");
            }
        }
    }
}

#[test]
fn tau_e_inverse_undoes_tau_e() {
    let r3 = trunc(3);
    let v2 = cyc(&r3, 2);
    let epi = hom_maps(&reg(&r3), &v2).unwrap().into_iter().find(|h| h.is_surjective()).unwrap();
    let g = MorphObject::from_map(&epi).unwrap();
    let t = tau_morphism(&g, Category::E, TauDirection::Forward).unwrap();
    let back = tau_morphism(&t.object, Category::E, TauDirection::Inverse).unwrap();
    assert!(back.object.is_isomorphic(&red(&g, RedContext::E).unwrap()).unwrap());
    assert!(cok_object(&mono(&k(&r3), &reg(&r3))).side() == ObjSide::M);
}

#[test]
fn corpora_have_the_promised_size() {
    let r2 = trunc(2);
    let opts = CorpusOptions::default();
    let monos = theorem_corpus(&r2, &opts).unwrap();
    assert!(monos.len() >= 40);
    assert!(monos.iter().all(|x| x.is_mono()));
    let objs = objects(&r2);
    assert!(objs.objects().all(|x| x.is_indecomposable().unwrap()));
    assert_eq!(modules(&r2).len(), 2);
}
