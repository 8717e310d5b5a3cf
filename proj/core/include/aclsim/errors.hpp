/*
 * Copyright (c) 2026 aclsim contributors
 *
 * Licensed under the Apache License, Version 2.0 (the "License"); you may
 * not use this file except in compliance with the License. You may obtain
 * a copy of the License at http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace aclsim {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A field value outside its allowed range; the message names the field.
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Frame size below the minimum implied by the headers present.
class SizeError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Stack consulted through a port it is not bound to, or a bad binding.
class BindingError : public Error {
public:
    using Error::Error;
};

/// Rule edit rejected: duplicate/missing seq or a bad permutation.
class EditError : public Error {
public:
    using Error::Error;
};

/// Removing the last rule of a bound stack.
class EmptinessError : public EditError {
public:
    using EditError::EditError;
};

/// Time given to a stateful component moved backwards.
class ClockError : public Error {
public:
    using Error::Error;
};

/// Structured-text parse or consistency failure, with a 1-based line.
class SchemaError : public Error {
public:
    SchemaError(const std::string& msg, int line)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg), line_(line) {}
    explicit SchemaError(const std::string& msg) : SchemaError(msg, 0) {}
    int line() const { return line_; }

private:
    int line_ = 0;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

}  // namespace aclsim
