// Copyright 2026 The dicke-rbm Authors
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

#ifndef DICKE_PARALLEL_HPP_
#define DICKE_PARALLEL_HPP_

#include <cstddef>
#include <functional>

namespace dicke {

// Upper bound on worker threads used by any library routine. 0 means
// std::thread::hardware_concurrency().
void set_max_threads(std::size_t n);
std::size_t max_threads();

// Calls body(i) for every i in [0, count). Work is split into contiguous
// blocks; body must not touch shared mutable state except through index i.
// Exceptions thrown by body are rethrown on the calling thread (first wins).
void parallel_for(std::size_t count,
                  const std::function<void(std::size_t)>& body);

}  // namespace dicke

#endif  // DICKE_PARALLEL_HPP_
