//! Small stock categories and sample structures used by tests, the CLI
//! `preset` subcommand and the browser demo.

use std::collections::BTreeMap;

use crate::category::{Category, MorId, ObjId};
use crate::copresheaf::Copresheaf;
use crate::functor::{product, Functor};
use crate::lens::Lens;

/// The empty category.
pub fn empty() -> Category {
    Category::builder().finish().expect("empty category")
}

/// The terminal category: one object, one identity.
pub fn terminal() -> Category {
    let mut b = Category::builder();
    let star = b.add_object("*");
    let id = b.add_identity("id", star);
    b.set_composite(id, id, id);
    b.finish().expect("terminal category")
}

/// The discrete category on `n` objects.
pub fn discrete(n: usize) -> Category {
    let mut b = Category::builder();
    for i in 0..n {
        let o = b.add_object(format!("d{i}"));
        let id = b.add_identity(format!("id_d{i}"), o);
        b.set_composite(id, id, id);
    }
    b.finish().expect("discrete category")
}

/// The interval category `0 → 1` with its single non-identity arrow `t`.
pub fn interval() -> Category {
    let mut b = Category::builder();
    let o0 = b.add_object("0");
    let o1 = b.add_object("1");
    let i0 = b.add_identity("id_0", o0);
    let i1 = b.add_identity("id_1", o1);
    let t = b.add_morphism("t", o0, o1);
    b.set_composite(i0, i0, i0);
    b.set_composite(i1, i1, i1);
    b.set_composite(i0, t, t);
    b.set_composite(t, i1, t);
    b.finish().expect("interval category")
}

/// Two parallel arrows `s, t : 0 ⇉ 1`.
pub fn parallel_pair() -> Category {
    let mut b = Category::builder();
    let o0 = b.add_object("0");
    let o1 = b.add_object("1");
    let i0 = b.add_identity("id_0", o0);
    let i1 = b.add_identity("id_1", o1);
    let s = b.add_morphism("s", o0, o1);
    let t = b.add_morphism("t", o0, o1);
    b.set_composite(i0, i0, i0);
    b.set_composite(i1, i1, i1);
    for m in [s, t] {
        b.set_composite(i0, m, m);
        b.set_composite(m, i1, m);
    }
    b.finish().expect("parallel pair")
}

/// The commutative square: the poset product `2 × 2`.
///
/// Not free on a graph (the two paths around the square are equal), so it
/// exercises composition tables with genuine relations.
pub fn commutative_square() -> Category {
    let mut b = Category::builder();
    let sw = b.add_object("00");
    let nw = b.add_object("01");
    let se = b.add_object("10");
    let ne = b.add_object("11");
    let ids: Vec<MorId> = [("id_00", sw), ("id_01", nw), ("id_10", se), ("id_11", ne)]
        .into_iter()
        .map(|(n, o)| b.add_identity(n, o))
        .collect();
    let left = b.add_morphism("l", sw, nw);
    let top = b.add_morphism("u", nw, ne);
    let bottom = b.add_morphism("d", sw, se);
    let right = b.add_morphism("r", se, ne);
    let diag = b.add_morphism("m", sw, ne);
    for &id in &ids {
        b.set_composite(id, id, id);
    }
    for (f, o_dom, o_cod) in [
        (left, 0usize, 1usize),
        (top, 1, 3),
        (bottom, 0, 2),
        (right, 2, 3),
        (diag, 0, 3),
    ] {
        b.set_composite(ids[o_dom], f, f);
        b.set_composite(f, ids[o_cod], f);
    }
    b.set_composite(left, top, diag);
    b.set_composite(bottom, right, diag);
    b.finish().expect("commutative square")
}

/// The cyclic group of order `n` viewed as a one-object category.
pub fn cyclic_monoid(n: usize) -> Category {
    assert!(n >= 1, "order must be positive");
    let mut b = Category::builder();
    let star = b.add_object("*");
    let mut gens = Vec::with_capacity(n);
    for k in 0..n {
        let m = if k == 0 {
            b.add_identity("g0", star)
        } else {
            b.add_morphism(format!("g{k}"), star, star)
        };
        gens.push(m);
    }
    for i in 0..n {
        for j in 0..n {
            b.set_composite(gens[i], gens[j], gens[(i + j) % n]);
        }
    }
    b.finish().expect("cyclic monoid")
}

/// One object and one non-identity idempotent `e` with `e∘e = e`.
pub fn walking_idempotent() -> Category {
    let mut b = Category::builder();
    let star = b.add_object("*");
    let id = b.add_identity("id", star);
    let e = b.add_morphism("e", star, star);
    b.set_composite(id, id, id);
    b.set_composite(id, e, e);
    b.set_composite(e, id, e);
    b.set_composite(e, e, e);
    b.finish().expect("walking idempotent")
}

/// All stock categories by name, for the CLI and demo preset pickers.
pub fn category_presets() -> Vec<(&'static str, Category)> {
    vec![
        ("terminal", terminal()),
        ("discrete2", discrete(2)),
        ("interval", interval()),
        ("parallel-pair", parallel_pair()),
        ("commutative-square", commutative_square()),
        ("cyclic3", cyclic_monoid(3)),
        ("walking-idempotent", walking_idempotent()),
    ]
}

/// A copresheaf on the interval: two elements upstairs collapsing onto one
/// of two downstream elements, leaving the other unreached.
pub fn sample_copresheaf() -> Copresheaf {
    let base = interval();
    let sets = vec![vec!["x".into(), "y".into()], vec!["p".into(), "q".into()]];
    // id_0, id_1, t in morphism order.
    let maps = vec![vec![0, 1], vec![0, 1], vec![0, 0]];
    Copresheaf::new(base, sets, maps).expect("sample copresheaf")
}

/// The projection `V × B → B` for `V` the walking idempotent and `B` the
/// interval, with its canonical split-opfibration lens.
pub fn projection_lens() -> Lens {
    let v = walking_idempotent();
    let b = interval();
    let prod = product(&v, &b).expect("product");
    let functor = prod.to_right.clone();
    let a_cat = functor.source().clone();
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    for a in a_cat.objects() {
        let va = prod.to_left.on_object(a);
        let id_v = v.identity(va);
        for u in b.morphisms_from(functor.on_object(a)) {
            let lift = a_cat
                .morphisms_from(a)
                .find(|&m| prod.to_left.on_morphism(m) == id_v && prod.to_right.on_morphism(m) == u)
                .expect("product has (id, u)");
            lifts.insert((a, u), lift);
        }
    }
    Lens::new(functor, lifts).expect("projection lens")
}

/// A lawful lens that is not a split opfibration: the chosen lift `l` of
/// `t` is parallel to another morphism `w` over `t` that does not factor
/// through it.
pub fn non_split_lens() -> Lens {
    let b = interval();
    let mut builder = Category::builder();
    let a = builder.add_object("a");
    let a1 = builder.add_object("a1");
    let a2 = builder.add_object("a2");
    let ids = [
        builder.add_identity("id_a", a),
        builder.add_identity("id_a1", a1),
        builder.add_identity("id_a2", a2),
    ];
    let w = builder.add_morphism("w", a, a1);
    let l = builder.add_morphism("l", a, a2);
    for id in ids {
        builder.set_composite(id, id, id);
    }
    builder.set_composite(ids[0], w, w);
    builder.set_composite(w, ids[1], w);
    builder.set_composite(ids[0], l, l);
    builder.set_composite(l, ids[2], l);
    let a_cat = builder.finish().expect("source category");

    let o0 = b.object_named("0").unwrap();
    let o1 = b.object_named("1").unwrap();
    let t = b.morphism_named("t").unwrap();
    let functor = Functor::new(
        a_cat.clone(),
        b.clone(),
        vec![o0, o1, o1],
        vec![b.identity(o0), b.identity(o1), b.identity(o1), t, t],
    )
    .expect("functor");
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    lifts.insert((a, b.identity(o0)), ids[0]);
    lifts.insert((a1, b.identity(o1)), ids[1]);
    lifts.insert((a2, b.identity(o1)), ids[2]);
    lifts.insert((a, t), l);
    Lens::new(functor, lifts).expect("non-split lens")
}
