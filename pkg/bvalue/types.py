from typing import Optional, Sequence, Tuple, Union

import numpy as np

ArrayLike = Union[float, np.ndarray]
Observations = Sequence[float]
CurvePoint = Tuple[float, float]
DistributionPoint = Tuple[float, str, float, Optional[float]]
