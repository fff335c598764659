use std::collections::HashMap;

use girth_map::{validate, Interval, SurfaceMap};

use crate::SurfaceError;

/// Slot, arc and face lookups for a valid map.
pub(crate) struct View<'a> {
    pub m: &'a SurfaceMap,
    pub face_of: HashMap<Interval, usize>,
    pub arc_of_slot: Vec<usize>,
    pub country_of_slot: Vec<usize>,
    pub pos_of_slot: Vec<usize>,
    pub partner: Vec<usize>,
}

impl<'a> View<'a> {
    pub fn new(m: &'a SurfaceMap) -> Result<View<'a>, SurfaceError> {
        validate(m).map_err(|mut e| e.remove(0))?;
        let n = m.slot_count();
        let mut face_of = HashMap::new();
        for (fi, f) in m.faces.iter().enumerate() {
            for &iv in f.boundary.iter().flatten() {
                face_of.insert(iv, fi);
            }
        }
        let mut arc_of_slot = vec![0; n];
        for (a, &[s, t]) in m.arcs.iter().enumerate() {
            arc_of_slot[s] = a;
            arc_of_slot[t] = a;
        }
        let mut country_of_slot = vec![0; n];
        let mut pos_of_slot = vec![0; n];
        for (c, slots) in m.countries.iter().enumerate() {
            for (k, &s) in slots.iter().enumerate() {
                country_of_slot[s] = c;
                pos_of_slot[s] = k;
            }
        }
        let mut partner = vec![0; n];
        for &[s, t] in &m.gluing {
            partner[s] = t;
            partner[t] = s;
        }
        Ok(View { m, face_of, arc_of_slot, country_of_slot, pos_of_slot, partner })
    }

    pub fn mate(&self, s: usize) -> usize {
        let [a, b] = self.m.arcs[self.arc_of_slot[s]];
        if a == s {
            b
        } else {
            a
        }
    }

    pub fn starting_at(&self, s: usize) -> Interval {
        Interval { country: self.country_of_slot[s], index: self.pos_of_slot[s] }
    }

    /// The next interval along the same country.
    pub fn next_on_country(&self, iv: Interval) -> Interval {
        Interval { country: iv.country, index: (iv.index + 1) % self.m.intervals_of(iv.country) }
    }

    /// Quarter position on arc `a` next to its end at slot `s`.
    pub fn quarter_near(&self, a: usize, s: usize) -> u8 {
        if self.m.arcs[a][0] == s {
            1
        } else {
            3
        }
    }

    /// The in-S face beside slot `s`.
    pub fn s_face_at(&self, s: usize) -> usize {
        let after = self.starting_at(s);
        let n = self.m.intervals_of(after.country);
        let before = Interval { country: after.country, index: (after.index + n - 1) % n };
        let f = self.face_of[&after];
        if self.m.faces[f].in_s {
            f
        } else {
            self.face_of[&before]
        }
    }

    /// The interval on the partner country glued to `iv`.
    pub fn glued(&self, iv: Interval) -> Interval {
        let other = iv.country ^ 1;
        match self.m.end_slot(iv) {
            None => Interval { country: other, index: 0 },
            Some(end) => Interval { country: other, index: self.pos_of_slot[self.partner[end]] },
        }
    }

    /// Components of the subsurface as lists of in-S faces, with the Euler
    /// characteristic of each.
    pub fn s_components(&self) -> Vec<(Vec<usize>, i64)> {
        let m = self.m;
        let nf = m.faces.len();
        let mut parent: Vec<usize> = (0..nf).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            p[x] = r;
            r
        }
        for iv in m.all_intervals() {
            let (f, g) = (self.face_of[&iv], self.face_of[&self.glued(iv)]);
            if m.faces[f].in_s {
                let (a, b) = (find(&mut parent, f), find(&mut parent, g));
                parent[a] = b;
            }
        }
        let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
        for f in (0..nf).filter(|&f| m.faces[f].in_s) {
            let r = find(&mut parent, f);
            match groups.iter_mut().find(|(k, _)| *k == r) {
                Some((_, v)) => v.push(f),
                None => groups.push((r, vec![f])),
            }
        }
        groups
            .into_iter()
            .map(|(_, faces)| {
                let twice: i64 = faces
                    .iter()
                    .map(|&f| {
                        let face = &m.faces[f];
                        let proper =
                            face.boundary.iter().flatten().filter(|iv| !m.countries[iv.country].is_empty()).count()
                                as i64;
                        2 * (2 - face.boundary.len() as i64) - proper
                    })
                    .sum();
                (faces, twice / 2)
            })
            .collect()
    }

    /// Whether some component of the subsurface carries an essential curve.
    pub fn has_essential_curves(&self) -> bool {
        self.s_components().iter().any(|(_, chi)| *chi <= 0)
    }
}
