// Copyright 2026 The QSDC Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QSDC_QCORE_ERRORS_H
#define QSDC_QCORE_ERRORS_H

#include <stdexcept>
#include <string>

namespace qsdc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

#define QSDC_DEFINE_ERROR(Name)              \
    class Name : public Error {              \
       public:                               \
        using Error::Error;                  \
    }

// qcore
QSDC_DEFINE_ERROR(LayoutError);
QSDC_DEFINE_ERROR(CapacityError);
QSDC_DEFINE_ERROR(BasisError);
QSDC_DEFINE_ERROR(DimError);
// channels
QSDC_DEFINE_ERROR(SymbolError);
// netsim
QSDC_DEFINE_ERROR(CustodyError);
QSDC_DEFINE_ERROR(ChannelEmpty);
QSDC_DEFINE_ERROR(DeadlockError);
QSDC_DEFINE_ERROR(PolicyError);
// protocols / contract / cli
QSDC_DEFINE_ERROR(ConfigError);
QSDC_DEFINE_ERROR(FormatError);
QSDC_DEFINE_ERROR(ReplayError);
/// A simulation invariant was violated (e.g. a complement outcome in an honest run).
QSDC_DEFINE_ERROR(InternalError);

#undef QSDC_DEFINE_ERROR

}  // namespace qsdc

#endif  // QSDC_QCORE_ERRORS_H
