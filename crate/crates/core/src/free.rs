//! The free quandle `F(X)`, realised as pairs `(x, a)` with `x ∈ X` and `a`
//! a reduced word in the free group on `X`, standing for the conjugate
//! `a⁻¹ x a`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::boundary::Sign;

/// A freely reduced word: no letter is adjacent to its own inverse.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeGroupWord {
    letters: Vec<(String, Sign)>,
}

impl FreeGroupWord {
    pub fn identity() -> Self {
        FreeGroupWord::default()
    }

    pub fn letter(name: impl Into<String>, exp: Sign) -> Self {
        FreeGroupWord {
            letters: vec![(name.into(), exp)],
        }
    }

    /// Builds a word from arbitrary letters, reducing it.
    pub fn from_letters(letters: impl IntoIterator<Item = (String, Sign)>) -> Self {
        let mut w = FreeGroupWord::identity();
        for l in letters {
            w.push(l);
        }
        w
    }

    fn push(&mut self, (name, exp): (String, Sign)) {
        if let Some((last, e)) = self.letters.last() {
            if *last == name && *e == -exp {
                self.letters.pop();
                return;
            }
        }
        self.letters.push((name, exp));
    }

    pub fn letters(&self) -> &[(String, Sign)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.letters
            .windows(2)
            .all(|w| !(w[0].0 == w[1].0 && w[0].1 == -w[1].1))
    }

    pub fn mul(&self, other: &FreeGroupWord) -> FreeGroupWord {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(l.clone());
        }
        w
    }

    pub fn inverse(&self) -> FreeGroupWord {
        FreeGroupWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|(n, e)| (n.clone(), -*e))
                .collect(),
        }
    }
}

impl fmt::Display for FreeGroupWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, (n, e)) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, "·")?;
            }
            match e {
                Sign::Plus => write!(f, "{n}")?,
                Sign::Minus => write!(f, "{n}⁻¹")?,
            }
        }
        Ok(())
    }
}

/// An element `(base, tail)` of the free quandle, always in normal form:
/// the tail is reduced and does not start with `base^{±1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FreeQuandleElement {
    base: String,
    tail: FreeGroupWord,
}

impl FreeQuandleElement {
    /// The generator `(x, 1)`.
    pub fn generator(name: impl Into<String>) -> Self {
        FreeQuandleElement {
            base: name.into(),
            tail: FreeGroupWord::identity(),
        }
    }

    /// Builds `(base, tail)` and brings it to normal form.
    pub fn new(base: impl Into<String>, tail: FreeGroupWord) -> Self {
        FreeQuandleElement {
            base: base.into(),
            tail,
        }
        .normalized()
    }

    pub fn base(&self) -> &str {
        &self.base
    }

    pub fn tail(&self) -> &FreeGroupWord {
        &self.tail
    }

    /// Strips leading `base^{±1}` letters: `(x, x^{±1} a) = (x, a)`.
    pub fn normalized(mut self) -> Self {
        let lead = self
            .tail
            .letters
            .iter()
            .take_while(|(n, _)| *n == self.base)
            .count();
        if lead > 0 {
            self.tail.letters.drain(..lead);
        }
        self
    }

    pub fn is_normal(&self) -> bool {
        self.tail.is_reduced()
            && self
                .tail
                .letters
                .first()
                .is_none_or(|(n, _)| *n != self.base)
    }

    /// The group element `tail⁻¹ · base · tail` this element stands for.
    pub fn as_conjugate(&self) -> FreeGroupWord {
        self.tail
            .inverse()
            .mul(&FreeGroupWord::letter(self.base.clone(), Sign::Plus))
            .mul(&self.tail)
    }

    pub fn op(&self, other: &FreeQuandleElement, sign: Sign) -> FreeQuandleElement {
        fq_op(self, other, sign)
    }
}

impl fmt::Display for FreeQuandleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.base, self.tail)
    }
}

/// `(x₁, a) ▷ (x₂, b) = (x₁, a b⁻¹ x₂ b)`; with `sign = Minus` the operation
/// is `◁` and the middle letter becomes `x₂⁻¹`.
pub fn fq_op(e1: &FreeQuandleElement, e2: &FreeQuandleElement, sign: Sign) -> FreeQuandleElement {
    let tail = e1
        .tail
        .mul(&e2.tail.inverse())
        .mul(&FreeGroupWord::letter(e2.base.clone(), sign))
        .mul(&e2.tail);
    FreeQuandleElement::new(e1.base.clone(), tail)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: &str) -> FreeQuandleElement {
        FreeQuandleElement::generator(n)
    }

    #[test]
    fn basic_products() {
        let (x, y) = (g("x"), g("y"));
        let xy = fq_op(&x, &y, Sign::Plus);
        assert_eq!(xy, FreeQuandleElement::new("x", FreeGroupWord::letter("y", Sign::Plus)));
        assert_eq!(fq_op(&x, &x, Sign::Plus), x);
        assert_eq!(fq_op(&xy, &y, Sign::Minus), x);
    }

    #[test]
    fn normal_form_strips_leading_base_letters() {
        let w = FreeGroupWord::from_letters(vec![
            ("x".to_string(), Sign::Plus),
            ("x".to_string(), Sign::Plus),
            ("y".to_string(), Sign::Minus),
        ]);
        let e = FreeQuandleElement::new("x", w);
        assert_eq!(e.tail().len(), 1);
        assert!(e.is_normal());
    }

    #[test]
    fn reduction() {
        let w = FreeGroupWord::from_letters(vec![
            ("a".to_string(), Sign::Plus),
            ("b".to_string(), Sign::Plus),
            ("b".to_string(), Sign::Minus),
            ("a".to_string(), Sign::Minus),
        ]);
        assert!(w.is_empty());
        let u = FreeGroupWord::letter("a", Sign::Plus);
        assert!(u.mul(&u.inverse()).is_empty());
    }
}
