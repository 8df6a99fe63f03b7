// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string_view>

namespace courtside::detail {

extern const std::string_view kOverviewThird;
extern const std::string_view kOverviewFirst;
extern const std::string_view kActionsThird;
extern const std::string_view kActionsFirst;

}  // namespace courtside::detail
