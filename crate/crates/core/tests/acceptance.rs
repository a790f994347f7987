//! Acceptance suite: one criterion per theorem the toolkit implements,
//! each checked exactly (discrete equalities, no tolerances) on frozen
//! fixtures. Run with `cargo test --test acceptance -- --nocapture` to see
//! the per-criterion lines.

use std::collections::BTreeMap;

use lenscat::category::{Category, CategoryViolation, MorId, ObjId, WideSubcategory};
use lenscat::comonad::{
    coalgebra_from_lens, coalgebra_report, cofree, comonad_law_report, enumerate_coalgebras,
    lens_from_coalgebra, CoalgebraViolation,
};
use lenscat::copresheaf::{arrows_copresheaf, elements, fibres};
use lenscat::decalage::{decalage, decalage_comonad_laws};
use lenscat::factorisation::{
    splitting_factorisation_report, vertical_subcategory, FactorisationViolation,
};
use lenscat::functor::{pullback, Functor};
use lenscat::graph::{free_category, Graph};
use lenscat::lens::{enumerate_lens_structures, Lens, LensViolation};
use lenscat::opfibration::{
    discrete_opfibration_report, split_opfibration_report, DopfViolation, OpcartesianViolation,
};
use lenscat::presets;
use lenscat::span::{compose_spans, pullback_lens, LensSpan};

type Check = fn() -> Result<(), String>;

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

/// A1: the category validator accepts every preset and witnesses each
/// class of defect precisely.
fn a1_category_axioms() -> Result<(), String> {
    for (name, cat) in presets::category_presets() {
        let v = cat.validate();
        ensure(v.is_empty(), &format!("preset {name} invalid: {v:?}"))?;
    }
    // Missing composite.
    let mut b = Category::builder();
    let o = b.add_object("o");
    let id = b.add_identity("id", o);
    b.add_morphism("e", o, o);
    b.set_composite(id, id, id);
    let cat = b.finish().map_err(|e| e.to_string())?;
    ensure(
        cat.validate()
            .iter()
            .any(|v| matches!(v, CategoryViolation::CompositeUndefined { .. })),
        "missing composite not witnessed",
    )?;
    // Identity law break.
    let mut b = Category::builder();
    let o = b.add_object("o");
    let id = b.add_identity("id", o);
    let e = b.add_morphism("e", o, o);
    b.set_composite(id, id, id);
    b.set_composite(id, e, id); // e∘id should be e
    b.set_composite(e, id, e);
    b.set_composite(e, e, e);
    let cat = b.finish().map_err(|e| e.to_string())?;
    ensure(
        cat.validate().iter().any(
            |v| matches!(v, CategoryViolation::LeftIdentity { morphism, .. } if morphism == "e"),
        ),
        "identity-law break not witnessed",
    )?;
    // Associativity break in the cyclic group of order 3: redefine g1;g1 = g1.
    let good = presets::cyclic_monoid(3);
    let mut b = Category::builder();
    let o = b.add_object("*");
    let g0 = b.add_identity("g0", o);
    let g1 = b.add_morphism("g1", o, o);
    let g2 = b.add_morphism("g2", o, o);
    let gens = [g0, g1, g2];
    for i in 0..3usize {
        for j in 0..3usize {
            let k = if (i, j) == (1, 1) { 1 } else { (i + j) % 3 };
            b.set_composite(gens[i], gens[j], gens[k]);
        }
    }
    let broken = b.finish().map_err(|e| e.to_string())?;
    ensure(good.validate().is_empty(), "cyclic3 should be lawful")?;
    ensure(
        broken
            .validate()
            .iter()
            .any(|v| matches!(v, CategoryViolation::Associativity { .. })),
        "associativity break not witnessed",
    )
}

/// A2: free categories on DAGs have exactly the paths as morphisms, and
/// cyclic graphs are rejected with a cycle witness.
fn a2_free_category() -> Result<(), String> {
    let mut g = Graph::new();
    let a = g.add_vertex("a");
    let b = g.add_vertex("b");
    let c = g.add_vertex("c");
    let d = g.add_vertex("d");
    g.add_edge("f", a, b);
    g.add_edge("g", a, c);
    g.add_edge("h", b, d);
    g.add_edge("k", c, d);
    let free = free_category(&g).map_err(|e| e.to_string())?;
    ensure(
        free.category.morphism_count() == 10,
        "diamond should have 10 paths",
    )?;
    ensure(
        free.category.validate().is_empty(),
        "diamond free category invalid",
    )?;

    let mut g = Graph::new();
    let a = g.add_vertex("a");
    let b = g.add_vertex("b");
    let c = g.add_vertex("c");
    g.add_edge("f1", a, b);
    g.add_edge("f2", a, b);
    g.add_edge("g1", b, c);
    g.add_edge("g2", b, c);
    let free = free_category(&g).map_err(|e| e.to_string())?;
    ensure(
        free.category.morphism_count() == 11,
        "double-edge chain should have 11 paths",
    )?;

    let mut g = Graph::new();
    let a = g.add_vertex("a");
    let b = g.add_vertex("b");
    g.add_edge("f", a, b);
    g.add_edge("g", b, a);
    match free_category(&g) {
        Err(e) => ensure(
            e.to_string().contains("cycle"),
            "error should name the cycle",
        ),
        Ok(_) => Err("cyclic graph accepted".into()),
    }
}

/// A3: the lens validator accepts the lawful fixtures and produces the
/// right witness for each mutated law.
fn a3_lens_laws() -> Result<(), String> {
    let lens = presets::non_split_lens();
    ensure(
        lens.validate().is_empty(),
        "non-split fixture should be lawful",
    )?;
    let proj = presets::projection_lens();
    ensure(
        proj.validate().is_empty(),
        "projection fixture should be lawful",
    )?;

    // MissingLift.
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> =
        lens.lifts().map(|(a, u, m)| ((a, u), m)).collect();
    let key = *lifts
        .keys()
        .find(|(_, u)| !lens.target().is_identity(*u))
        .ok_or("fixture has a non-identity lift")?;
    lifts.remove(&key);
    let broken = Lens::new(lens.functor().clone(), lifts).map_err(|e| e.to_string())?;
    ensure(
        broken
            .validate()
            .iter()
            .any(|v| matches!(v, LensViolation::MissingLift { .. })),
        "missing lift not witnessed",
    )?;

    // LiftProjection (L1): lift of t redirected to an identity.
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> =
        lens.lifts().map(|(a, u, m)| ((a, u), m)).collect();
    lifts.insert(key, lens.source().identity(key.0));
    let broken = Lens::new(lens.functor().clone(), lifts).map_err(|e| e.to_string())?;
    ensure(
        broken
            .validate()
            .iter()
            .any(|v| matches!(v, LensViolation::LiftProjection { .. })),
        "projection violation not witnessed",
    )?;

    // IdentityLift (L2): lift an identity to a non-identity vertical.
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> =
        proj.lifts().map(|(a, u, m)| ((a, u), m)).collect();
    let a_cat = proj.source();
    let vertical = a_cat
        .morphisms()
        .find(|&m| {
            !a_cat.is_identity(m)
                && a_cat.dom(m) == a_cat.cod(m)
                && proj.target().is_identity(proj.functor().on_morphism(m))
        })
        .ok_or("projection fixture has a vertical endomorphism")?;
    let at = a_cat.dom(vertical);
    let over = proj.target().identity(proj.functor().on_object(at));
    lifts.insert((at, over), vertical);
    let broken = Lens::new(proj.functor().clone(), lifts).map_err(|e| e.to_string())?;
    ensure(
        broken
            .validate()
            .iter()
            .any(|v| matches!(v, LensViolation::IdentityLift { .. })),
        "identity-lift violation not witnessed",
    )?;

    // CompositionLift (L3): on the chain fixture, send the long lift down
    // the shortcut edge.
    let (functor, chain) = chain_fixture()?;
    let lawful = canonical_chain_lens(&functor, &chain)?;
    ensure(
        lawful.validate().is_empty(),
        "canonical chain lens should be lawful",
    )?;
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> =
        lawful.lifts().map(|(a, u, m)| ((a, u), m)).collect();
    let a0 = functor.source().object_named("a").ok_or("object a")?;
    let st = functor
        .target()
        .morphism_named("s;t")
        .ok_or("morphism s;t")?;
    let shortcut = functor.source().morphism_named("x").ok_or("shortcut x")?;
    lifts.insert((a0, st), shortcut);
    let broken = Lens::new(functor.clone(), lifts).map_err(|e| e.to_string())?;
    ensure(
        broken
            .validate()
            .iter()
            .any(|v| matches!(v, LensViolation::CompositionLift { .. })),
        "composition violation not witnessed",
    )
}

/// Source category: free on a → a1 → a2 with a parallel second edge
/// a1 → a2 and a shortcut a → a2; base: free on 0 → 1 → 2.
/// The shortcut maps to s;t, so L3 can be broken without breaking L1.
fn chain_fixture() -> Result<(Functor, Category), String> {
    let mut g = Graph::new();
    let v0 = g.add_vertex("0");
    let v1 = g.add_vertex("1");
    let v2 = g.add_vertex("2");
    g.add_edge("s", v0, v1);
    g.add_edge("t", v1, v2);
    let base = free_category(&g).map_err(|e| e.to_string())?;

    let mut g = Graph::new();
    let a = g.add_vertex("a");
    let a1 = g.add_vertex("a1");
    let a2 = g.add_vertex("a2");
    g.add_edge("e1", a, a1);
    g.add_edge("e2", a1, a2);
    g.add_edge("e2x", a1, a2);
    g.add_edge("x", a, a2);
    let src = free_category(&g).map_err(|e| e.to_string())?;

    let b_cat = base.category.clone();
    let a_cat = src.category.clone();
    let find_b = |n: &str| b_cat.morphism_named(n).ok_or(format!("base morphism {n}"));
    let s = find_b("s")?;
    let t = find_b("t")?;
    let st = find_b("s;t")?;
    let obj_map = vec![
        b_cat.object_named("0").unwrap(),
        b_cat.object_named("1").unwrap(),
        b_cat.object_named("2").unwrap(),
    ];
    let mut mor_map = Vec::new();
    for m in a_cat.morphisms() {
        let name = a_cat.morphism_name(m).to_string();
        let image = match name.as_str() {
            "id_a" => b_cat.identity(obj_map[0]),
            "id_a1" => b_cat.identity(obj_map[1]),
            "id_a2" => b_cat.identity(obj_map[2]),
            "e1" => s,
            "e2" | "e2x" => t,
            "x" | "e1;e2" | "e1;e2x" => st,
            other => return Err(format!("unexpected morphism {other}")),
        };
        mor_map.push(image);
    }
    let functor =
        Functor::new(a_cat, b_cat.clone(), obj_map, mor_map).map_err(|e| e.to_string())?;
    if !functor.validate().is_empty() {
        return Err("chain fixture functor invalid".into());
    }
    Ok((functor, b_cat))
}

fn canonical_chain_lens(functor: &Functor, base: &Category) -> Result<Lens, String> {
    let a_cat = functor.source();
    let find_a = |n: &str| {
        a_cat
            .morphism_named(n)
            .ok_or(format!("source morphism {n}"))
    };
    let mut lifts: BTreeMap<(ObjId, MorId), MorId> = BTreeMap::new();
    for o in a_cat.objects() {
        lifts.insert((o, base.identity(functor.on_object(o))), a_cat.identity(o));
    }
    let a = a_cat.object_named("a").ok_or("object a")?;
    let a1 = a_cat.object_named("a1").ok_or("object a1")?;
    let s = base.morphism_named("s").ok_or("s")?;
    let t = base.morphism_named("t").ok_or("t")?;
    let st = base.morphism_named("s;t").ok_or("s;t")?;
    lifts.insert((a, s), find_a("e1")?);
    lifts.insert((a1, t), find_a("e2")?);
    lifts.insert((a, st), find_a("e1;e2")?);
    Lens::new(functor.clone(), lifts).map_err(|e| e.to_string())
}

/// A4: category of elements ↔ discrete opfibration, inverse on both sides.
fn a4_elements_fibres_equivalence() -> Result<(), String> {
    let cop = presets::sample_copresheaf();
    let el = elements(&cop).map_err(|e| e.to_string())?;
    ensure(el.category.object_count() == 4, "el should have 4 objects")?;
    ensure(
        el.category.morphism_count() == 6,
        "el should have 6 morphisms",
    )?;
    ensure(el.category.validate().is_empty(), "el invalid")?;
    ensure(
        discrete_opfibration_report(&el.projection).is_empty(),
        "projection not dopf",
    )?;
    ensure(el.lens.validate().is_empty(), "canonical lens unlawful")?;

    let back = fibres(&el.projection).map_err(|e| format!("{e:?}"))?;
    for b in cop.base().objects() {
        ensure(back.set(b).len() == cop.set(b).len(), "fibre sizes differ")?;
    }
    for u in cop.base().morphisms() {
        ensure(back.action(u) == cop.action(u), "fibre actions differ")?;
    }

    // el(fibres(f)) ≅ source over the base, for f the elements projection.
    let el2 = elements(&back).map_err(|e| e.to_string())?;
    let a_cat = el.category.clone();
    let f = &el.projection;
    let mut positions: Vec<usize> = vec![0; a_cat.object_count()];
    let mut counters: Vec<usize> = vec![0; f.target().object_count()];
    for a in a_cat.objects() {
        let b = f.on_object(a);
        positions[a.index()] = counters[b.index()];
        counters[b.index()] += 1;
    }
    let obj_map: Vec<ObjId> = a_cat
        .objects()
        .map(|a| el2.object_ids[f.on_object(a).index()][positions[a.index()]])
        .collect();
    let mor_map: Vec<MorId> = a_cat
        .morphisms()
        .map(|m| {
            el2.lens
                .lift(obj_map[a_cat.dom(m).index()], f.on_morphism(m))
                .ok_or("el2 lens lift missing")
        })
        .collect::<Result<_, _>>()?;
    let iso =
        Functor::new(a_cat, el2.category.clone(), obj_map, mor_map).map_err(|e| e.to_string())?;
    ensure(
        iso.is_isomorphism(),
        "el∘fibres does not reproduce the source",
    )?;
    let over = iso.then(&el2.projection).map_err(|e| e.to_string())?;
    ensure(&over == f, "iso does not commute with the projections")
}

/// A5: lens-structure counting — exactly one on a discrete opfibration,
/// one on the terminal collapse (which is not a dopf), none when a lift
/// is impossible.
fn a5_lens_structure_counts() -> Result<(), String> {
    let el = elements(&presets::sample_copresheaf()).map_err(|e| e.to_string())?;
    let structures = enumerate_lens_structures(&el.projection);
    ensure(
        structures.len() == 1,
        "dopf should have exactly one lens structure",
    )?;
    ensure(
        structures[0] == el.lens,
        "unique structure should be the canonical lens",
    )?;

    let b = presets::terminal();
    let a = presets::interval();
    let star = b.objects().next().ok_or("terminal object")?;
    let id = b.identity(star);
    let collapse =
        Functor::new(a, b, vec![star, star], vec![id, id, id]).map_err(|e| e.to_string())?;
    ensure(
        discrete_opfibration_report(&collapse)
            .iter()
            .any(|v| matches!(v, DopfViolation::MultipleLifts { .. })),
        "collapse should fail dopf with a multiplicity witness",
    )?;
    ensure(
        enumerate_lens_structures(&collapse).len() == 1,
        "collapse admits exactly the identity-lift lens",
    )?;

    let b = presets::interval();
    let a = presets::discrete(1);
    let zero = b.object_named("0").ok_or("interval object 0")?;
    let point = Functor::new(a, b.clone(), vec![zero], vec![b.identity(zero)])
        .map_err(|e| e.to_string())?;
    ensure(
        discrete_opfibration_report(&point)
            .iter()
            .any(|v| matches!(v, DopfViolation::NoLift { .. })),
        "point should fail dopf with a no-lift witness",
    )?;
    ensure(
        enumerate_lens_structures(&point).is_empty(),
        "point admits no lens structure",
    )
}

/// A6: décalage comonad laws on every preset (including the non-free
/// ones); the counit is a discrete opfibration; `Dec` is the category of
/// elements of the coproduct of representables.
fn a6_decalage() -> Result<(), String> {
    for (name, cat) in presets::category_presets() {
        let laws = decalage_comonad_laws(&cat).map_err(|e| e.to_string())?;
        ensure(
            laws.is_empty(),
            &format!("comonad laws fail on {name}: {laws:?}"),
        )?;
        let dec = decalage(&cat).map_err(|e| e.to_string())?;
        ensure(
            discrete_opfibration_report(&dec.counit).is_empty(),
            &format!("décalage counit not dopf on {name}"),
        )?;
    }
    let b = presets::commutative_square();
    let dec = decalage(&b).map_err(|e| e.to_string())?;
    ensure(
        dec.category.object_count() == 9,
        "Dec(square) should have 9 objects",
    )?;
    ensure(
        dec.category.morphism_count() == 16,
        "Dec(square) should have 16 morphisms",
    )?;
    let arrows = arrows_copresheaf(&b);
    let el = elements(&arrows).map_err(|e| e.to_string())?;
    let obj_map: Vec<ObjId> = dec
        .object_morphism
        .iter()
        .map(|&u| {
            let cod = b.cod(u);
            let idx = arrows
                .element_index(cod, b.morphism_name(u))
                .ok_or("element for morphism")?;
            Ok::<_, String>(el.object_ids[cod.index()][idx])
        })
        .collect::<Result<_, _>>()?;
    let mor_map: Vec<MorId> = dec
        .category
        .morphisms()
        .map(|m| {
            let src = dec.category.dom(m);
            let w = dec.morphism_action[m.index()];
            el.lens.lift(obj_map[src.index()], w).ok_or("elements lift")
        })
        .collect::<Result<_, _>>()?;
    let iso = Functor::new(dec.category.clone(), el.category.clone(), obj_map, mor_map)
        .map_err(|e| e.to_string())?;
    ensure(
        iso.is_isomorphism(),
        "Dec(B) is not isomorphic to el(∐ B(b,−))",
    )?;
    let over = iso.then(&el.projection).map_err(|e| e.to_string())?;
    ensure(
        over == dec.counit,
        "décalage identification does not respect projections",
    )
}

/// A7: coalgebras for the cofree lens comonad are exactly lenses — laws,
/// round trips, a targeted comultiplication failure, matching counts, and
/// the comonad laws themselves.
fn a7_coalgebras() -> Result<(), String> {
    let lens = presets::non_split_lens();
    let k = cofree(lens.functor()).map_err(|e| e.to_string())?;
    let k2 = cofree(&k.projection).map_err(|e| e.to_string())?;
    let alpha = coalgebra_from_lens(&lens, &k).map_err(|e| e.to_string())?;
    let report = coalgebra_report(&alpha, &k, &k2).map_err(|e| e.to_string())?;
    ensure(
        report.is_empty(),
        &format!("lawful lens yields coalgebra violations: {report:?}"),
    )?;
    let back = lens_from_coalgebra(&alpha, &k).map_err(|e| e.to_string())?;
    ensure(back == lens, "coalgebra round trip is not the identity")?;

    let lenses = enumerate_lens_structures(lens.functor());
    let coalgebras = enumerate_coalgebras(&k, &k2).map_err(|e| e.to_string())?;
    ensure(
        lenses.len() == 2,
        "fixture should admit exactly 2 lens structures",
    )?;
    ensure(
        coalgebras.len() == lenses.len(),
        &format!("{} coalgebras vs {} lenses", coalgebras.len(), lenses.len()),
    )?;

    // Comonad laws for K itself on the elements projection.
    let el = elements(&presets::sample_copresheaf()).map_err(|e| e.to_string())?;
    let laws = comonad_law_report(&el.projection).map_err(|e| e.to_string())?;
    ensure(
        laws.is_empty(),
        &format!("cofree comonad laws fail: {laws:?}"),
    )?;

    // A structure map that is functorial and counital but re-bases plans
    // inconsistently must fail precisely the comultiplication law.
    let (functor, _) = chain_fixture()?;
    let lawful = canonical_chain_lens(&functor, functor.target())?;
    let k = cofree(&functor).map_err(|e| e.to_string())?;
    let k2 = cofree(&k.projection).map_err(|e| e.to_string())?;
    let alpha = coalgebra_from_lens(&lawful, &k).map_err(|e| e.to_string())?;
    let a_cat = functor.source();
    let a1 = a_cat.object_named("a1").ok_or("object a1")?;
    let current = alpha.on_object(a1);
    let replacement = k
        .objects_over(functor.on_object(a1))
        .into_iter()
        .find(|&o| {
            o != current
                && k.sigma(o)
                    .on_object(k.coslices[k.base_of(o).index()].identity_object)
                    == k.sigma(current)
                        .on_object(k.coslices[k.base_of(current).index()].identity_object)
        })
        .ok_or("no alternative plan over a1")?;
    let obj_map: Vec<ObjId> = a_cat
        .objects()
        .map(|a| {
            if a == a1 {
                replacement
            } else {
                alpha.on_object(a)
            }
        })
        .collect();
    let mor_map: Vec<MorId> = a_cat
        .morphisms()
        .map(|m| {
            k.find_morphism(
                obj_map[a_cat.dom(m).index()],
                obj_map[a_cat.cod(m).index()],
                m,
            )
            .ok_or("mutant transition missing")
        })
        .collect::<Result<_, _>>()?;
    let mutant = Functor::new(a_cat.clone(), k.category.clone(), obj_map, mor_map)
        .map_err(|e| e.to_string())?;
    ensure(
        mutant.validate().is_empty(),
        "mutant structure map should be a functor",
    )?;
    let report = coalgebra_report(&mutant, &k, &k2).map_err(|e| e.to_string())?;
    ensure(
        !report.is_empty(),
        "mutant should violate the coalgebra laws",
    )?;
    ensure(
        report.iter().all(|v| {
            matches!(
                v,
                CoalgebraViolation::Comultiplication { .. }
                    | CoalgebraViolation::ComultiplicationMorphism { .. }
            )
        }),
        &format!("mutant should fail only comultiplication, got {report:?}"),
    )?;
    ensure(
        report
            .iter()
            .any(|v| matches!(v, CoalgebraViolation::Comultiplication { at } if at == "a")),
        "comultiplication failure should be witnessed at a",
    )
}

/// A8: a lens is a split opfibration iff (chosen lifts, verticals) is a
/// strict factorisation system — two independent checks agree on every
/// fixture.
fn a8_split_opfibration_factorisation() -> Result<(), String> {
    let el = elements(&presets::sample_copresheaf()).map_err(|e| e.to_string())?;
    let fixtures: Vec<(&str, Lens)> = vec![
        ("projection", presets::projection_lens()),
        ("non-split", presets::non_split_lens()),
        ("elements", el.lens.clone()),
        ("identity", Lens::identity(presets::commutative_square())),
    ];
    for (name, lens) in &fixtures {
        let lifts = lens.lifting_subcategory();
        let verts = vertical_subcategory(lens);
        ensure(
            lifts.validate(lens.source()).is_empty(),
            &format!("{name}: lifts not a wide subcategory"),
        )?;
        ensure(
            verts.validate(lens.source()).is_empty(),
            &format!("{name}: verticals not a wide subcategory"),
        )?;
        let split = split_opfibration_report(lens).is_empty();
        let strict = splitting_factorisation_report(lens).is_empty();
        ensure(
            split == strict,
            &format!("{name}: opcartesian check ({split}) disagrees with factorisation ({strict})"),
        )?;
    }
    let non_split = presets::non_split_lens();
    ensure(
        split_opfibration_report(&non_split)
            .iter()
            .any(|v| matches!(v, OpcartesianViolation::NoFill { morphism, .. } if morphism == "w")),
        "opcartesian failure should name w",
    )?;
    ensure(
        splitting_factorisation_report(&non_split)
            .iter()
            .any(|v| matches!(v, FactorisationViolation::NoFactorisation { morphism } if morphism == "w")),
        "factorisation failure should name w",
    )?;
    ensure(
        split_opfibration_report(&presets::projection_lens()).is_empty(),
        "projection should be split",
    )?;
    ensure(
        split_opfibration_report(&el.lens).is_empty(),
        "discrete opfibrations are split opfibrations",
    )
}

/// A9: lens ⟷ wide subcategory with discretely-opfibred restriction.
fn a9_wide_subcategory() -> Result<(), String> {
    let el = elements(&presets::sample_copresheaf()).map_err(|e| e.to_string())?;
    for lens in [
        presets::non_split_lens(),
        presets::projection_lens(),
        el.lens.clone(),
    ] {
        let sub = lens.lifting_subcategory();
        ensure(
            sub.validate(lens.source()).is_empty(),
            "lifts should be wide and closed",
        )?;
        let back = Lens::from_wide_subcategory(lens.functor().clone(), &sub)
            .map_err(|e| format!("{e:?}"))?;
        ensure(
            back == lens,
            "wide-subcategory round trip is not the identity",
        )?;
    }
    // Removing one non-identity lift breaks existence with a witness.
    let lens = presets::projection_lens();
    let sub = lens.lifting_subcategory();
    let removed = *sub
        .morphisms
        .iter()
        .find(|&&m| !lens.source().is_identity(m))
        .ok_or("a non-identity lift")?;
    let smaller = WideSubcategory::new(sub.morphisms.iter().copied().filter(|&m| m != removed));
    match Lens::from_wide_subcategory(lens.functor().clone(), &smaller) {
        Err(violations) => ensure(
            violations
                .iter()
                .any(|v| matches!(v, DopfViolation::NoLift { .. })),
            "missing lift should be witnessed",
        ),
        Ok(_) => Err("broken subcategory accepted".into()),
    }
}

/// A10: pullbacks of lenses and span composition, with frozen sizes.
fn a10_pullback_and_spans() -> Result<(), String> {
    let el = elements(&presets::sample_copresheaf()).map_err(|e| e.to_string())?;
    let proj = presets::projection_lens();
    let pl = pullback_lens(&el.lens, proj.functor()).map_err(|e| e.to_string())?;
    ensure(
        pl.pullback.category.object_count() == 4,
        "pullback should have 4 objects",
    )?;
    ensure(
        pl.pullback.category.morphism_count() == 12,
        "pullback should have 12 morphisms",
    )?;
    ensure(
        pl.pullback.category.validate().is_empty(),
        "pullback category invalid",
    )?;
    ensure(
        pl.pullback.to_left.validate().is_empty(),
        "left projection invalid",
    )?;
    ensure(
        pl.pullback.to_right.validate().is_empty(),
        "right projection invalid",
    )?;
    ensure(pl.lens.validate().is_empty(), "transferred lens unlawful")?;

    let id_el = Lens::identity(el.category.clone());
    let span1 = LensSpan::new(id_el.clone(), el.lens.clone()).map_err(|e| e.to_string())?;
    let span2 = LensSpan::new(el.lens.clone(), id_el).map_err(|e| e.to_string())?;
    let composite = compose_spans(&span1, &span2).map_err(|e| e.to_string())?;
    ensure(
        composite.apex().object_count() == 8,
        "span apex should have 8 objects",
    )?;
    ensure(composite.left.validate().is_empty(), "left leg unlawful")?;
    ensure(composite.right.validate().is_empty(), "right leg unlawful")?;

    // The two transferred half-lenses on a shared pullback agree with the
    // direct pullback along each leg.
    let direct = pullback(el.lens.functor(), el.lens.functor()).map_err(|e| e.to_string())?;
    ensure(
        direct.category == composite.apex().clone(),
        "span pullback should match the direct pullback",
    )
}

/// A13: algebras for the comma monad are exactly split opfibrations —
/// monad laws, round trips, rejection of non-split lenses, matching
/// counts.
fn a13_algebras() -> Result<(), String> {
    use lenscat::monad::{
        algebra_from_lens, algebra_report, enumerate_algebras, free_split, lens_from_algebra,
        monad_law_report,
    };

    let el = elements(&presets::sample_copresheaf()).map_err(|e| e.to_string())?;
    let laws = monad_law_report(&el.projection).map_err(|e| e.to_string())?;
    ensure(laws.is_empty(), &format!("monad laws fail: {laws:?}"))?;

    let lens = presets::projection_lens();
    let t1 = free_split(lens.functor()).map_err(|e| e.to_string())?;
    let t2 = free_split(&t1.projection).map_err(|e| e.to_string())?;
    let k = algebra_from_lens(&lens, &t1).map_err(|e| format!("{e:?}"))?;
    let report = algebra_report(&k, &t1, &t2).map_err(|e| e.to_string())?;
    ensure(
        report.is_empty(),
        &format!("split lens yields algebra violations: {report:?}"),
    )?;
    let back = lens_from_algebra(&k, &t1).map_err(|e| e.to_string())?;
    ensure(back == lens, "algebra round trip is not the identity")?;

    let non_split = presets::non_split_lens();
    let t1_ns = free_split(non_split.functor()).map_err(|e| e.to_string())?;
    ensure(
        algebra_from_lens(&non_split, &t1_ns).is_err(),
        "non-split lens must not give an algebra",
    )?;

    // On the projection functor: 2 lens structures, 1 split, 1 algebra.
    let all = enumerate_lens_structures(lens.functor());
    ensure(
        all.len() == 2,
        "projection functor should admit 2 lens structures",
    )?;
    let split_count = all
        .iter()
        .filter(|l| split_opfibration_report(l).is_empty())
        .count();
    ensure(split_count == 1, "exactly one structure should be split")?;
    let algebras = enumerate_algebras(&t1, &t2).map_err(|e| e.to_string())?;
    ensure(
        algebras.len() == split_count,
        &format!(
            "{} algebras vs {} split structures",
            algebras.len(),
            split_count
        ),
    )
}

/// A12: lenses form a category — identities and associativity on the nose.
fn a12_lens_category() -> Result<(), String> {
    let el = elements(&presets::sample_copresheaf()).map_err(|e| e.to_string())?;
    let id_src = Lens::identity(el.category.clone());
    let id_tgt = Lens::identity(el.lens.target().clone());
    let l = &el.lens;
    ensure(
        &id_src.then(l).map_err(|e| e.to_string())? == l,
        "left identity fails",
    )?;
    ensure(
        &l.then(&id_tgt).map_err(|e| e.to_string())? == l,
        "right identity fails",
    )?;

    let proj = presets::projection_lens();
    let pl = pullback_lens(&proj, el.lens.functor()).map_err(|e| e.to_string())?;
    // pl.lens : P → el-category, el.lens : el-category → interval.
    let f1 = &pl.lens;
    let f2 = l;
    let f3 = &id_tgt;
    let left = f1
        .then(f2)
        .and_then(|x| x.then(f3))
        .map_err(|e| e.to_string())?;
    let right = f2
        .then(f3)
        .and_then(|x| f1.then(&x))
        .map_err(|e| e.to_string())?;
    ensure(left == right, "associativity fails")?;
    ensure(left.validate().is_empty(), "composite lens unlawful")
}

fn main_checks() -> Vec<(&'static str, &'static str, Check)> {
    vec![
        (
            "A1",
            "category axioms validated with witnesses",
            a1_category_axioms,
        ),
        (
            "A2",
            "free category on a DAG matches the path oracle",
            a2_free_category,
        ),
        (
            "A3",
            "lens laws L1-L3 validated with witnesses",
            a3_lens_laws,
        ),
        (
            "A4",
            "copresheaves ≃ discrete opfibrations via elements/fibres",
            a4_elements_fibres_equivalence,
        ),
        (
            "A5",
            "lens-structure counting (unique on dopf, zero when impossible)",
            a5_lens_structure_counts,
        ),
        (
            "A6",
            "décalage comonad laws; counit is a dopf; Dec = el(∐ representables)",
            a6_decalage,
        ),
        (
            "A7",
            "coalgebras for the cofree lens comonad are exactly lenses",
            a7_coalgebras,
        ),
        (
            "A8",
            "split opfibration ⟺ strict (lifts, verticals) factorisation",
            a8_split_opfibration_factorisation,
        ),
        (
            "A9",
            "lens ⟺ wide subcategory with discretely-opfibred restriction",
            a9_wide_subcategory,
        ),
        (
            "A10",
            "lens pullback and span composition preserve the laws",
            a10_pullback_and_spans,
        ),
        (
            "A12",
            "lenses form a category (identities, associativity)",
            a12_lens_category,
        ),
        (
            "A13",
            "algebras for the comma monad are exactly split opfibrations",
            a13_algebras,
        ),
    ]
}

#[test]
fn acceptance() {
    let mut failures = Vec::new();
    for (id, desc, check) in main_checks() {
        match check() {
            Ok(()) => println!("ACCEPTANCE {id} {desc}: PASS"),
            Err(msg) => {
                println!("ACCEPTANCE {id} {desc}: FAIL ({msg})");
                failures.push(format!("{id}: {msg}"));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "acceptance failures:\n{}",
        failures.join("\n")
    );
}
