use std::collections::BTreeMap;
use std::fmt::Write as _;

use bicircle::hull::{PatchTag, RuledMesh};

pub fn group_name(tag: &PatchTag) -> String {
    match tag {
        PatchTag::PlanarFace { circle } => format!("planar_face_{circle}"),
        PatchTag::RuledStrip => "ruled_strip".into(),
        PatchTag::DualCone { circle } => format!("dual_cone_{circle}"),
        PatchTag::DualSeam => "dual_seam".into(),
    }
}

/// ASCII OBJ with one `g` group per patch tag.
pub fn to_obj(mesh: &RuledMesh) -> String {
    let mut out = String::new();
    for v in &mesh.vertices {
        writeln!(out, "v {:.17e} {:.17e} {:.17e}", v.x, v.y, v.z).unwrap();
    }
    let mut groups: BTreeMap<String, Vec<[usize; 3]>> = BTreeMap::new();
    for (t, tag) in mesh.triangles.iter().zip(&mesh.tags) {
        groups.entry(group_name(tag)).or_default().push(*t);
    }
    for (name, tris) in groups {
        writeln!(out, "g {name}").unwrap();
        for [a, b, c] in tris {
            writeln!(out, "f {} {} {}", a + 1, b + 1, c + 1).unwrap();
        }
    }
    out
}

pub fn census(mesh: &RuledMesh) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for t in &mesh.tags {
        *m.entry(group_name(t)).or_insert(0) += 1;
    }
    m
}
