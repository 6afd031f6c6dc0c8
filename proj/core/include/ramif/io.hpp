#pragma once

#include <string>

#include "ramif/witt.hpp"

namespace ramif::io {

// Strict JSON round-trips.  Every document is an object carrying a schema
// tag plus explicit characteristic and variable headers, e.g.
//   {"schema":"ramif/form/1","char":5,"vars":["x1"],"degree":1,"terms":[...]}
// so exponents and scalars can never be coerced across base rings silently.
// Unknown fields, schema or characteristic mismatches, duplicate entries,
// and out-of-order wedge factors all throw input_error; decode(encode(v))
// returns a value equal to v.

std::string encode(const algebra::Poly& f);
std::string encode(const algebra::TLaurent& a);
std::string encode(const forms::DiffForm& w);
std::string encode(const forms::CharForm& cf);
std::string encode(const witt::WittVector& a);
std::string encode(const witt::FDecomposedWitt& x);

algebra::Poly decode_poly(const std::string& text);
algebra::TLaurent decode_laurent(const std::string& text);
forms::DiffForm decode_form(const std::string& text);
forms::CharForm decode_charform(const std::string& text);
witt::WittVector decode_witt(const std::string& text);
witt::FDecomposedWitt decode_decomposition(const std::string& text);

// Document kind from the schema tag without decoding the body: one of
// "poly", "laurent", "form", "charform", "witt", "decomposition".
std::string document_kind(const std::string& text);

}  // namespace ramif::io
