// Copyright 2026 The Glotwave Authors
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

#ifndef GLOTWAVE_DSP_PHASE_H_
#define GLOTWAVE_DSP_PHASE_H_

namespace glotwave::dsp {

// Principal value of an angle, in (-pi, pi]. Throws on non-finite input.
double WrapPhase(double x);

}  // namespace glotwave::dsp

#endif  // GLOTWAVE_DSP_PHASE_H_
