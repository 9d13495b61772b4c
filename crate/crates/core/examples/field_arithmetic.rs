//! Arithmetic in Q(sqrt 2) and in the cosine field of the octic.

use std::sync::Arc;

use nodal::exactfield::{field_arithmetic, Field, FieldOp, MinimalPolynomial, NumberFieldElement, Rational};

fn main() -> nodal::Result<()> {
    let m = Arc::new(MinimalPolynomial::from_i64(&[-2, 0, 1])?);
    let a = NumberFieldElement::generator(&m);
    let one = NumberFieldElement::one(&m);
    let x = field_arithmetic(&a, &one, FieldOp::Add)?;
    let y = field_arithmetic(&one, &x, FieldOp::Div)?;
    println!("field Q[a]/({m})");
    println!("  (a + 1)^-1 = {y}");
    println!("  (a + 1) * (a + 1)^-1 = {}", x.mul(&y));

    let octic = Arc::new(MinimalPolynomial::from_i64(&[2, 0, -4, 0, 1])?);
    let c = NumberFieldElement::generator(&octic);
    // c = 2 cos(pi/8), so c^2 - 2 = sqrt 2
    let s = c.mul(&c).sub(&NumberFieldElement::from_int(&octic, 2));
    println!("field Q[c]/({octic})");
    println!("  (c^2 - 2)^2 = {}", s.mul(&s));
    println!("  c / 2 = {}", c.scale(&Rational::new(1.into(), 2.into())));
    Ok(())
}
