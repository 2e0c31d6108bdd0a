"""
*Stochastic toy models of multi-stable systems.*

Two toy models are available, both integrated with the Euler--Maruyama
scheme (Ito interpretation):

* A coupled shear model with multiplicative noise, exhibiting a
  saddle-node bifurcation and a laminar (trivial) state that is left
  invariant by the noise. Whenever the energy drops below a threshold, a
  transition to the laminar state is counted and the system is restarted
  from the stable nontrivial fixed point.

* A double-well Langevin model with additive noise, whose tilt is the
  control parameter. Escapes over the saddle can be recorded to validate
  Kramers' law.

The inner loops are compiled using numba, the random numbers are drawn
from independent, seeded streams.

"""
