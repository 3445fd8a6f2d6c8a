// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IVLAB_RATIONAL_H_
#define IVLAB_RATIONAL_H_

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace ivlab {

// Exact arithmetic type used for signals, values, probabilities and payments.
using Rational = mpq_class;

// Parses "3", "-2/7", "0.15", "1e-3" or "2.5e2" into an exact rational. Decimal
// strings are read exactly, so "0.7" is 7/10 rather than the nearest double.
// Throws DomainError on malformed input or a zero denominator.
Rational ParseRational(std::string_view text);

// Exact conversion of a finite double (every finite double is a dyadic
// rational). Throws DomainError on NaN or infinity.
Rational RationalFromDouble(double value);

// Shortest decimal that round-trips the double, parsed exactly. This is what a
// human meant when writing 0.7 in a JSON file.
Rational RationalFromDecimalDouble(double value);

// "p/q", or "p" when the denominator is one.
std::string ToString(const Rational& value);

double ToDouble(const Rational& value);

// Formats a double with 17 significant digits, used in CSV output.
std::string FormatDouble(double value);

}  // namespace ivlab

#endif  // IVLAB_RATIONAL_H_
