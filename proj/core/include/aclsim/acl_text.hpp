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

#include <string>
#include <vector>

#include "aclsim/acl.hpp"

namespace aclsim {

// One rule per line:
//   <seq> <permit|deny|guard> [ethertype <hex>] [proto <n>] [len <min>-<max>]
//     [vlan <id>] [srcip <addr>/<prefix>] [dstip <addr>/<prefix>]
//     [srcmac <mac>/<mask>] [dstmac <mac>/<mask>] [inport <id>]
//     [sport <min>-<max>] [dport <min>-<max>] [tcpflags <val>/<mask>]
//     [dscp <n>] [threshold <0.xx> action <alert|reroute|prio-drop <p>>]
//     [police cir <bps> nb <bits> eb <bits>]
// Blank lines and lines starting with '#' are skipped. A guard line requires
// the threshold clause; only a permit line may carry a police clause.

/// Throws SchemaError carrying the 1-based line number on malformed input.
AclRule parse_acl_rule(const std::string& line, std::size_t line_no = 1);

/// Parses a whole rule listing; rules are returned in file order and must
/// have strictly increasing seq values.
std::vector<AclRule> parse_acl_text(const std::string& text);

/// Canonical one-line form; parse(print(r)) reproduces the rule and printing
/// is idempotent. Throws SchemaError for rules the text form cannot express
/// (a non-prefix ip mask).
std::string print_acl_rule(const AclRule& rule);

std::string print_acl_text(const std::vector<AclRule>& rules);

}  // namespace aclsim
