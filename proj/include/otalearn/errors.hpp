/*
 * Copyright 2026 the otalearn authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace otal {

// Base class for every error raised by the library.
class OtaError : public std::runtime_error {
public:
    explicit OtaError(const std::string& what) : std::runtime_error(what) {}
};

// Malformed automaton or document: dangling location indices, unknown actions,
// duplicate names, a run on an automaton that does not satisfy the operation's
// structural preconditions.
class StructuralError : public OtaError {
public:
    using OtaError::OtaError;
};

// An operation that requires a deterministic automaton received one with
// overlapping guards.
class NotDeterministic : public OtaError {
public:
    using OtaError::OtaError;
};

// A timed word violates the well-formedness rules of its kind, e.g. a delay
// word with a negative delay.
class InvalidWord : public OtaError {
public:
    using OtaError::OtaError;
};

// A table operation referenced a prefix that is not stored in the table.
class UnknownPrefix : public OtaError {
public:
    using OtaError::OtaError;
};

// An observation table no longer satisfies a structural invariant that the
// algorithms maintain by construction.
class InternalInvariantViolation : public OtaError {
public:
    using OtaError::OtaError;
};

// Hypothesis construction was attempted on a table that is not prepared.
class TableNotPrepared : public OtaError {
public:
    using OtaError::OtaError;
};

// The interval partition was asked for a value list that is not sorted,
// not duplicate-free, or does not start at 0.
class PartitionPreconditionViolated : public OtaError {
public:
    using OtaError::OtaError;
};

// A configured search or memory cap was exceeded.
class ResourceLimit : public OtaError {
public:
    using OtaError::OtaError;
};

// A word was parsed under one kind but written in another (reset markers
// present where forbidden, or missing where required).
class KindMismatch : public OtaError {
public:
    using OtaError::OtaError;
};

// A "cannot happen" condition: an invariant the code relies on was broken.
class InternalError : public OtaError {
public:
    using OtaError::OtaError;
};

// Two table words claim the same (location, action, clock value) with a
// different reset or target. Impossible for tables built against a
// deterministic target with correct resets; under guessed resets it marks the
// instance as disposable. Derived from InternalError so that contexts which
// do not expect guessing treat it as such.
class HypothesisConflict : public InternalError {
public:
    using InternalError::InternalError;
};

// Text input could not be parsed; `offset` is the byte position of the first
// offending character.
class ParseError : public OtaError {
public:
    ParseError(const std::string& what, std::size_t offset)
        : OtaError(what + " (at byte " + std::to_string(offset) + ")"), offset_(offset) {}

    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace otal
